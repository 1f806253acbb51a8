use num_traits::{One, Zero};

use crate::commrat::Mono;
use crate::error::{Error, Result};
use crate::ncexpr::{ExprStore, NcExpr, Normalizer};
use crate::{Poly, Rational};

/// `c + a·x + b·y` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VEntry {
    pub c: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl VEntry {
    pub fn new(c: Rational, x: Rational, y: Rational) -> Self {
        VEntry { c, x, y }
    }

    pub fn from_ints(c: i64, x: i64, y: i64) -> Self {
        let q = |v: i64| Rational::from_integer(v.into());
        VEntry::new(q(c), q(x), q(y))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0)
    }

    pub fn var_x() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn var_y() -> Self {
        Self::from_ints(0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Self {
        VEntry::new(-self.c.clone(), -self.x.clone(), -self.y.clone())
    }

    /// Reads a polynomial of total degree at most one.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        if p.total_degree().unwrap_or(0) > 1 {
            return None;
        }
        Some(VEntry::new(p.coeff(Mono::ONE), p.coeff(Mono::new(1, 0)), p.coeff(Mono::new(0, 1))))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms([
            (0, 0, self.c.clone()),
            (1, 0, self.x.clone()),
            (0, 1, self.y.clone()),
        ])
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.c.clone() + self.x.clone() * x + self.y.clone() * y
    }

    /// The entry as a normalized noncommutative expression.
    pub fn to_nc(&self, norm: &Normalizer<'_>) -> Result<NcExpr> {
        let store: &ExprStore = norm.store();
        let mut terms = Vec::new();
        for (coef, atom) in [(&self.x, store.x()), (&self.y, store.y())] {
            if !coef.is_zero() {
                let c = norm.constant(coef.clone())?;
                terms.push(norm.mul(c, atom)?);
            }
        }
        if !self.c.is_zero() || terms.is_empty() {
            terms.push(norm.constant(self.c.clone())?);
        }
        let mut acc = terms[0];
        for &t in &terms[1..] {
            acc = norm.add(acc, t)?;
        }
        Ok(acc)
    }
}

/// Square matrix with entries in `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VMatrix {
    k: usize,
    entries: Vec<VEntry>,
}

impl VMatrix {
    pub fn new(rows: Vec<Vec<VEntry>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("a V-matrix must be square with k >= 1".into()));
        }
        Ok(VMatrix { k, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &VEntry {
        &self.entries[i * self.k + j]
    }

    pub fn rows(&self) -> Vec<Vec<VEntry>> {
        if self.k == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> VMatrix {
        VMatrix {
            k: rows.len(),
            entries: rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect(),
        }
    }

    pub fn poly_rows(&self) -> Vec<Vec<Poly>> {
        self.rows().iter().map(|r| r.iter().map(VEntry::to_poly).collect()).collect()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Vec<Vec<Rational>> {
        self.rows().iter().map(|r| r.iter().map(|e| e.eval(x, y)).collect()).collect()
    }
}

/// Determinant of the commutativized matrix.
pub fn comm_det(m: &VMatrix) -> Poly {
    bareiss_det(m.poly_rows())
}

/// Fraction-free Bareiss elimination over `Q[x, y]`.
pub fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = Rational::one();
    let mut prev = Poly::one();
    for col in 0..n - 1 {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Poly::zero();
        };
        if p != col {
            a.swap(p, col);
            sign = -sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let v = &(&a[col][col] * &a[r][c]) - &(&a[r][col] * &a[col][c]);
                a[r][c] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[r][col] = Poly::zero();
        }
        prev = a[col][col].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vm(rows: &[&[(i64, i64, i64)]]) -> VMatrix {
        VMatrix::new(rows.iter().map(|r| r.iter().map(|&(c, x, y)| VEntry::from_ints(c, x, y)).collect()).collect()).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(comm_det(&vm(&[&[(0, 1, 0)]])), Poly::x());
        // Leibniz: x*y - 1*1
        let d = comm_det(&vm(&[&[(0, 1, 0), (1, 0, 0)], &[(1, 0, 0), (0, 0, 1)]]));
        assert_eq!(d, &(&Poly::x() * &Poly::y()) - &Poly::one());
        assert!(comm_det(&vm(&[&[(0, 1, 0), (0, 1, 0)], &[(0, 1, 0), (0, 1, 0)]])).is_zero());
    }

    #[test]
    fn bareiss_matches_leibniz_3x3() {
        let m = vm(&[
            &[(1, 1, 0), (0, 0, 1), (2, 0, 0)],
            &[(0, 0, 0), (1, -1, 1), (0, 1, 0)],
            &[(1, 0, 1), (0, 1, 0), (-1, 0, 0)],
        ]);
        let p = m.poly_rows();
        let leibniz = {
            let t = |a: &Poly, b: &Poly, c: &Poly| &(a * b) * c;
            let pos = &(&t(&p[0][0], &p[1][1], &p[2][2]) + &t(&p[0][1], &p[1][2], &p[2][0])) + &t(&p[0][2], &p[1][0], &p[2][1]);
            let neg = &(&t(&p[0][2], &p[1][1], &p[2][0]) + &t(&p[0][0], &p[1][2], &p[2][1])) + &t(&p[0][1], &p[1][0], &p[2][2]);
            &pos - &neg
        };
        assert_eq!(comm_det(&m), leibniz);
    }

    #[test]
    fn entry_degree_check() {
        assert!(VEntry::from_poly(&(&Poly::x() * &Poly::y())).is_none());
        assert_eq!(VEntry::from_poly(&(&Poly::x() + &Poly::one())), Some(VEntry::from_ints(1, 1, 0)));
    }
}
