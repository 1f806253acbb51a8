//! Arithmetic in the prime field `F_p`, `p = 2^61 - 1`.

pub(crate) const PRIME: u64 = (1 << 61) - 1;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

pub(crate) fn neg(a: u64) -> u64 {
    (PRIME - a) % PRIME
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub(crate) fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, PRIME - 2))
}

/// Dense univariate polynomial over `F_p`, lowest degree first, trimmed.
pub(crate) type UPolyP = Vec<u64>;

fn trim(p: &mut UPolyP) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the monic gcd; `None` when both inputs vanish.
pub(crate) fn gcd_degree(a: &UPolyP, b: &UPolyP) -> Option<usize> {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap()).expect("trimmed");
        while a.len() >= b.len() {
            let c = mul(*a.last().unwrap(), lb);
            let shift = a.len() - b.len();
            for (i, &v) in b.iter().enumerate() {
                a[i + shift] = add(a[i + shift], neg(mul(c, v)));
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    (!a.is_empty()).then(|| a.len() - 1)
}
