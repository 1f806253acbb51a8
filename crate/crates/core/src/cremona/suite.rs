use serde::Serialize;

use super::auto::{classical_word, eq_auto, inner_auto, is_inner_with, p_auto, t_auto, word_to_auto, Generator, InnerCheck, NcAuto};
use super::gl2::{embed_univariate, Gl2Rat};
use crate::commrat::commutativize;
use crate::error::Result;
use crate::ncexpr::{reverse, ExprStore, NcExpr, Normalizer};
use crate::random::Sampler;
use crate::repeq::{eq_nc, EqConfig, EqVerdict};
use crate::syntax::print_nc;
use crate::{CommRat, Rational};

/// Sample sizes of the relation suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSizes {
    /// Pairs `(a, b)` for `t_a t_b = t_{ab}`.
    pub product_pairs: usize,
    /// Scalars `d(x)` for the inner action of scalar matrices.
    pub scalars: usize,
    /// Constant matrices `m` for the `τ t_m τ` closed form.
    pub constant_matrices: usize,
    /// Pairs `(a, e)` for the reversal duality.
    pub duality_samples: usize,
    /// Degree bound of the entries of random matrices over `Q(x)`.
    pub entry_degree: u32,
    /// Integer coefficient bound of random entries.
    pub coeff_bound: i64,
    /// Size of random test expressions.
    pub expr_size: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            product_pairs: 20,
            scalars: 10,
            constant_matrices: 10,
            duality_samples: 10,
            entry_degree: 2,
            coeff_bound: 2,
            expr_size: 4,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub comm_distinct: usize,
    pub nc_distinct: usize,
    pub probably_equal: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: &EqVerdict) {
        match v {
            EqVerdict::CommDistinct { .. } => self.comm_distinct += 1,
            EqVerdict::NcDistinct { .. } => self.nc_distinct += 1,
            EqVerdict::ProbablyEqual { .. } => self.probably_equal += 1,
        }
    }

    pub fn distinct(&self) -> usize {
        self.comm_distinct + self.nc_distinct
    }
}

/// A distinct verdict, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub sample: usize,
    pub component: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub verdict: EqVerdict,
}

/// Outcome of checking a relation against a conjugator it is not required
/// to satisfy; informational only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternateConvention {
    pub conjugator: &'static str,
    pub verdicts: VerdictCounts,
    pub validates: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub samples: usize,
    pub verdicts: VerdictCounts,
    pub shadow_checks: usize,
    pub shadow_failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate: Option<AlternateConvention>,
}

impl RelationReport {
    fn new(id: &'static str, statement: &'static str) -> Self {
        RelationReport {
            id,
            statement,
            samples: 0,
            verdicts: VerdictCounts::default(),
            shadow_checks: 0,
            shadow_failures: 0,
            passed: false,
            failures: Vec::new(),
            alternate: None,
        }
    }

    fn verdict(&mut self, store: &ExprStore, sample: usize, component: &'static str, lhs: NcExpr, rhs: NcExpr, v: EqVerdict) {
        self.verdicts.add(&v);
        if v.is_distinct() {
            self.failures.push(Failure { sample, component, lhs: print_nc(store, lhs), rhs: print_nc(store, rhs), verdict: v });
        }
    }

    fn pair(&mut self, store: &ExprStore, sample: usize, f: &NcAuto, g: &NcAuto, c: InnerCheck) {
        self.verdict(store, sample, "x", f.img_x, g.img_x, c.x);
        self.verdict(store, sample, "y", f.img_y, g.img_y, c.y);
    }

    fn shadow(&mut self, ok: bool) {
        self.shadow_checks += 1;
        if !ok {
            self.shadow_failures += 1;
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.verdicts.distinct() == 0 && self.shadow_failures == 0;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub eq_config: EqConfig,
    pub sizes: SuiteSizes,
    pub relations: Vec<RelationReport>,
    pub passed: bool,
}

fn same_pair(a: &(CommRat, CommRat), b: &(CommRat, CommRat)) -> bool {
    a.0.equals(&b.0) && a.1.equals(&b.1)
}

/// The word `τ t_J τ t_J` with `J = [[0, 1], [1, 0]]`, realizing
/// `(x, y) ↦ (x⁻¹, y⁻¹)`.
pub fn inversion_word() -> Vec<Generator> {
    let j = Gl2Rat::from_ints(0, 1, 1, 0).expect("invertible");
    vec![Generator::Tau, Generator::T(j.clone()), Generator::Tau, Generator::T(j)]
}

/// `τ t_e` with `e = [[0, x], [1, 0]]`.
pub fn tau_e_word() -> Vec<Generator> {
    vec![Generator::Tau, Generator::T(Gl2Rat::e_matrix())]
}

/// Runs the relation suite. Random samples are drawn from `seed`; equality
/// checks use `cfg`.
pub fn verify_relation_suite(store: &ExprStore, cfg: &EqConfig, seed: u64, sizes: &SuiteSizes) -> Result<SuiteReport> {
    let mut rng = Sampler::new(seed);
    let relations = vec![
        relation_tau(store, cfg)?,
        relation_product(store, cfg, &mut rng, sizes)?,
        relation_scalar(store, cfg, &mut rng, sizes)?,
        relation_moebius(store, cfg, &mut rng, sizes)?,
        relation_cube(store, cfg)?,
        relation_duality(store, cfg, &mut rng, sizes)?,
    ];
    let passed = relations.iter().all(|r| r.passed);
    Ok(SuiteReport { seed, eq_config: cfg.clone(), sizes: sizes.clone(), relations, passed })
}

fn relation_tau(store: &ExprStore, cfg: &EqConfig) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R1", "tau^2 = id");
    let w = [Generator::Tau, Generator::Tau];
    let f = word_to_auto(store, &w)?;
    let id = NcAuto::identity(store);
    let c = eq_auto(store, &f, &id, cfg)?;
    rep.pair(store, 0, &f, &id, c);
    rep.shadow(same_pair(&classical_word(store, &w)?, &(CommRat::x(), CommRat::y())));
    rep.shadow(same_pair(&f.shadow(store)?, &(CommRat::x(), CommRat::y())));
    rep.samples = 1;
    Ok(rep.finish())
}

fn relation_product(store: &ExprStore, cfg: &EqConfig, rng: &mut Sampler, sizes: &SuiteSizes) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R2", "t_a t_b = t_(ab)");
    for i in 0..sizes.product_pairs {
        let a = rng.gl2_x(sizes.entry_degree, sizes.coeff_bound);
        let b = rng.gl2_x(sizes.entry_degree, sizes.coeff_bound);
        let w = [Generator::T(a.clone()), Generator::T(b.clone())];
        let ab = a.mul(&b);
        let lhs = word_to_auto(store, &w)?;
        let rhs = t_auto(store, &ab)?;
        let c = eq_auto(store, &lhs, &rhs, cfg)?;
        rep.pair(store, i, &lhs, &rhs, c);
        let classical = classical_word(store, &w)?;
        rep.shadow(same_pair(&classical, &classical_word(store, &[Generator::T(ab)])?));
        rep.shadow(same_pair(&lhs.shadow(store)?, &classical));
    }
    rep.samples = sizes.product_pairs;
    Ok(rep.finish())
}

fn relation_scalar(store: &ExprStore, cfg: &EqConfig, rng: &mut Sampler, sizes: &SuiteSizes) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R3", "t_d is conjugation by d(x)^-1 for scalar d");
    let mut alt = VerdictCounts::default();
    let n = Normalizer::new(store);
    for i in 0..sizes.scalars {
        let d = rng.scalar_x(sizes.coeff_bound);
        let f = t_auto(store, &Gl2Rat::scalar(d.clone())?)?;
        let dn = embed_univariate(&n, &d)?;
        let r = n.inv(dn)?;
        let c = is_inner_with(store, &f, r, cfg)?;
        rep.pair(store, i, &f, &inner_auto(store, r)?, c);
        let other = is_inner_with(store, &f, dn, cfg)?;
        alt.add(&other.x);
        alt.add(&other.y);
        rep.shadow(same_pair(&f.shadow(store)?, &(CommRat::x(), CommRat::y())));
    }
    rep.samples = sizes.scalars;
    let validates = alt.distinct() == 0;
    rep.alternate = Some(AlternateConvention { conjugator: "d(x)", verdicts: alt, validates });
    Ok(rep.finish())
}

fn relation_moebius(store: &ExprStore, cfg: &EqConfig, rng: &mut Sampler, sizes: &SuiteSizes) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R4", "tau t_m tau = ((c*x+d)^-1 (a*x+b), y)");
    let n = Normalizer::new(store);
    for i in 0..sizes.constant_matrices {
        let m = rng.gl2_const(3);
        let w = [Generator::Tau, Generator::T(m.clone()), Generator::Tau];
        let lhs = word_to_auto(store, &w)?;
        let x = store.x();
        let affine = |u: &CommRat, v: &CommRat| -> Result<NcExpr> {
            let u = n.constant(u.as_constant().unwrap_or_else(|| Rational::from_integer(0.into())))?;
            let v = n.constant(v.as_constant().unwrap_or_else(|| Rational::from_integer(0.into())))?;
            let ux = n.mul(u, x)?;
            n.add(ux, v)
        };
        let num = affine(&m.p, &m.q)?;
        let den = affine(&m.r, &m.s)?;
        let den_inv = n.inv(den)?;
        let img_x = n.mul(den_inv, num)?;
        let rhs = NcAuto::new(store, img_x, store.y())?;
        let c = eq_auto(store, &lhs, &rhs, cfg)?;
        rep.pair(store, i, &lhs, &rhs, c);
        let classical = classical_word(store, &w)?;
        let closed = (commutativize(store, img_x)?, CommRat::y());
        rep.shadow(same_pair(&classical, &closed));
        rep.shadow(same_pair(&lhs.shadow(store)?, &closed));
    }
    rep.samples = sizes.constant_matrices;
    Ok(rep.finish())
}

fn relation_cube(store: &ExprStore, cfg: &EqConfig) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R5", "a^-1 (tau e)^3 is conjugation by x^-1 y");
    let a_word = inversion_word();
    let a = word_to_auto(store, &a_word)?;
    let n = Normalizer::new(store);
    let (x, y) = (store.x(), store.y());
    let (xi, yi) = (n.inv(x)?, n.inv(y)?);
    let inversion = NcAuto::new(store, xi, yi)?;
    let c = eq_auto(store, &a, &inversion, cfg)?;
    rep.pair(store, 0, &a, &inversion, c);

    // a is an involution, so a⁻¹ = a.
    let mut w = a_word.clone();
    for _ in 0..3 {
        w.extend(tau_e_word());
    }
    let f = word_to_auto(store, &w)?;
    let xiy = n.mul(xi, y)?;
    let c = is_inner_with(store, &f, xiy, cfg)?;
    rep.pair(store, 1, &f, &inner_auto(store, xiy)?, c);
    rep.shadow(same_pair(&classical_word(store, &w)?, &(CommRat::x(), CommRat::y())));
    rep.shadow(same_pair(&f.shadow(store)?, &(CommRat::x(), CommRat::y())));
    rep.samples = 2;
    Ok(rep.finish())
}

fn relation_duality(store: &ExprStore, cfg: &EqConfig, rng: &mut Sampler, sizes: &SuiteSizes) -> Result<RelationReport> {
    let mut rep = RelationReport::new("R6", "rho t_a = p_a rho");
    for i in 0..sizes.duality_samples {
        let a = rng.gl2_x(sizes.entry_degree, sizes.coeff_bound);
        let e = rng.expr(store, sizes.expr_size)?;
        let t = t_auto(store, &a)?;
        let p = p_auto(store, &a)?;
        let lhs = reverse(store, t.act(store, e)?)?;
        let rhs = p.act(store, reverse(store, e)?)?;
        let v = eq_nc(store, lhs, rhs, cfg)?;
        rep.verdict(store, i, "expr", lhs, rhs, v);
        rep.shadow(commutativize(store, lhs)?.equals(&commutativize(store, rhs)?));
    }
    rep.samples = sizes.duality_samples;
    Ok(rep.finish())
}
