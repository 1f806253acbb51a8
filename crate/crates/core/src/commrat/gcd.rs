//! Bivariate polynomial gcd over a field.
//!
//! Polynomials are viewed as elements of `C[x][y]`. Contents are computed
//! with the Euclidean algorithm in `C[x]`, primitive parts are carried through
//! a primitive pseudo-remainder sequence in `y`.

use super::poly::{Mono, Poly2};
use crate::modp;
use crate::scalar::Scalar;

/// Dense univariate polynomial in `x`, lowest degree first, no trailing zeros.
type UPoly<C> = Vec<C>;

fn utrim<C: Scalar>(p: &mut UPoly<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uis_zero<C: Scalar>(p: &UPoly<C>) -> bool {
    p.is_empty()
}

fn udeg<C: Scalar>(p: &UPoly<C>) -> usize {
    p.len().saturating_sub(1)
}

fn umul<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ca.clone() * cb.clone();
        }
    }
    utrim(&mut out);
    out
}

fn usub<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    let n = a.len().max(b.len());
    let mut out: UPoly<C> = (0..n)
        .map(|i| {
            let ca = a.get(i).cloned().unwrap_or_else(C::zero);
            let cb = b.get(i).cloned().unwrap_or_else(C::zero);
            ca - cb
        })
        .collect();
    utrim(&mut out);
    out
}

/// Quotient and remainder of univariate division over the field.
fn udivrem<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>) -> (UPoly<C>, UPoly<C>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lb = b.last().unwrap().clone();
    let mut quot = vec![C::zero(); rem.len() - b.len() + 1];
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().clone() / lb.clone();
        for (i, cb) in b.iter().enumerate() {
            rem[i + shift] = rem[i + shift].clone() - c.clone() * cb.clone();
        }
        quot[shift] = c;
        // the leading coefficient cancels exactly over a field
        rem.pop();
        utrim(&mut rem);
    }
    utrim(&mut quot);
    (quot, rem)
}

fn umonic<C: Scalar>(p: UPoly<C>) -> UPoly<C> {
    match p.last() {
        None => p,
        Some(l) => {
            let l = l.clone();
            p.into_iter().map(|c| c / l.clone()).collect()
        }
    }
}

fn ugcd<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    // monic remainders keep rational coefficients from swelling
    let mut a = umonic(a.clone());
    let mut b = umonic(b.clone());
    while !uis_zero(&b) {
        let (_, r) = udivrem(&a, &b);
        a = b;
        b = umonic(r);
    }
    umonic(a)
}

/// `C[x][y]` view: index = y-degree, entry = coefficient in `C[x]`.
type YPoly<C> = Vec<UPoly<C>>;

fn to_ypoly<C: Scalar>(p: &Poly2<C>) -> YPoly<C> {
    let dy = p.degree_y().unwrap_or(0) as usize;
    let mut out: YPoly<C> = vec![Vec::new(); if p.is_zero() { 0 } else { dy + 1 }];
    for (m, c) in p.terms() {
        let row = &mut out[m.dy as usize];
        let i = m.dx as usize;
        if row.len() <= i {
            row.resize(i + 1, C::zero());
        }
        row[i] = c.clone();
    }
    for row in out.iter_mut() {
        utrim(row);
    }
    out
}

fn from_ypoly<C: Scalar>(p: &YPoly<C>) -> Poly2<C> {
    let mut out = Poly2::zero();
    for (dy, row) in p.iter().enumerate() {
        for (dx, c) in row.iter().enumerate() {
            out.add_term(Mono::new(dx as u32, dy as u32), c.clone());
        }
    }
    out
}

fn ytrim<C: Scalar>(p: &mut YPoly<C>) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn content<C: Scalar>(p: &YPoly<C>) -> UPoly<C> {
    let mut g: UPoly<C> = Vec::new();
    for c in p {
        if c.is_empty() {
            continue;
        }
        g = if g.is_empty() { umonic(c.clone()) } else { ugcd(&g, c) };
        if udeg(&g) == 0 {
            break;
        }
    }
    g
}

fn divide_content<C: Scalar>(p: &YPoly<C>, cont: &UPoly<C>) -> YPoly<C> {
    p.iter()
        .map(|c| {
            if c.is_empty() {
                Vec::new()
            } else {
                let (q, r) = udivrem(c, cont);
                debug_assert!(r.is_empty(), "content must divide every coefficient");
                q
            }
        })
        .collect()
}

fn primitive_part<C: Scalar>(p: &YPoly<C>) -> YPoly<C> {
    let cont = content(p);
    if cont.is_empty() {
        return p.clone();
    }
    divide_content(p, &cont)
}

/// Pseudo-remainder of `a` by `b` in `y` over `C[x]`.
fn prem<C: Scalar>(a: &YPoly<C>, b: &YPoly<C>) -> YPoly<C> {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        // r := lb * r - lr * y^shift * b
        for c in r.iter_mut() {
            *c = umul(c, &lb);
        }
        for (i, cb) in b.iter().enumerate() {
            let t = umul(&lr, cb);
            r[i + shift] = usub(&r[i + shift], &t);
        }
        debug_assert!(r[dr].is_empty());
        ytrim(&mut r);
    }
    r
}

/// Greatest common divisor, normalised so its graded-lex leading coefficient is one.
pub fn gcd<C: Scalar>(a: &Poly2<C>, b: &Poly2<C>) -> Poly2<C> {
    if a.is_zero() {
        return normalize_leading(b);
    }
    if b.is_zero() {
        return normalize_leading(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() || certified_coprime(a, b) {
        return Poly2::one();
    }
    let ya = to_ypoly(a);
    let yb = to_ypoly(b);
    let ca = content(&ya);
    let cb = content(&yb);
    let cont = ugcd(&ca, &cb);
    let mut p = divide_content(&ya, &ca);
    let mut q = divide_content(&yb, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let prim = loop {
        if q.is_empty() {
            break p;
        }
        if q.len() == 1 {
            // a nonzero y-free primitive polynomial is a unit
            break vec![vec![C::one()]];
        }
        let r = prem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { primitive_part(&r) };
    };
    let prim = primitive_part(&prim);
    let g: YPoly<C> = prim.iter().map(|c| umul(c, &cont)).collect();
    normalize_leading(&from_ypoly(&g))
}

/// Values of `p` along the line where one variable is fixed to `at`, as a
/// dense polynomial in the other variable over `F_p`.
fn restrict_mod_p<C: Scalar>(p: &Poly2<C>, fix_x: bool, at: u64) -> Option<modp::UPolyP> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let (fixed, free) = if fix_x { (m.dx, m.dy) } else { (m.dy, m.dx) };
        let v = modp::mul(c.to_mod_p()?, modp::pow(at, fixed as u64));
        let i = free as usize;
        if out.len() <= i {
            out.resize(i + 1, 0);
        }
        out[i] = modp::add(out[i], v);
    }
    Some(out)
}

/// Proves `gcd(a, b) = 1` by two univariate gcds over `F_p`, or gives up.
///
/// Suppose `g` divides `a` and `b` with `deg_y g > 0`. By Gauss's lemma the
/// leading `y`-coefficient of `g` divides that of `a`, so if the latter does
/// not vanish at `x = x0` modulo `p`, `g(x0, y)` keeps its `y`-degree and
/// divides both `a(x0, y)` and `b(x0, y)` over `F_p`. A trivial gcd there
/// therefore rules out any `y`-dependence of `g`; the same argument with the
/// roles of the variables swapped rules out `x`. If `p` divided the integer
/// content of `a`, its image would vanish and the leading-coefficient test
/// fails, so the argument needs no assumption on `p`.
fn certified_coprime<C: Scalar>(a: &Poly2<C>, b: &Poly2<C>) -> bool {
    const X0: u64 = 0x0123_4567_89ab_cdef;
    const Y0: u64 = 0x0fed_cba9_8765_4321;
    let side = |fix_x: bool, at: u64| -> Option<bool> {
        let ra = restrict_mod_p(a, fix_x, at)?;
        let rb = restrict_mod_p(b, fix_x, at)?;
        let free_deg = |p: &Poly2<C>| if fix_x { p.degree_y() } else { p.degree_x() };
        // the restriction must keep the full degree of `a`
        if ra.len() != free_deg(a)? as usize + 1 || ra.last() == Some(&0) {
            return None;
        }
        Some(modp::gcd_degree(&ra, &rb)? == 0)
    };
    side(false, Y0) == Some(true) && side(true, X0) == Some(true)
}

fn normalize_leading<C: Scalar>(p: &Poly2<C>) -> Poly2<C> {
    match p.leading() {
        None => Poly2::zero(),
        Some((_, lc)) => {
            let inv = C::one() / lc.clone();
            p.scale(&inv)
        }
    }
}
