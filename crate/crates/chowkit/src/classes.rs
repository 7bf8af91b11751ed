//! The named polynomial classes `b_k` (degree `2k`) and `d_k` (degree `4k`),
//! the integer expansion coefficients `a_{g,mu}`, and the defect polynomial
//! `f_n(x) = (1+x)^n - (1+x^n)` together with the identities that tie them
//! together.
//!
//! In root coordinates `b_k = (-1)^k sum alpha^i beta^(k-i)` and
//! `d_k = (-1)^k sum alpha^(2i) beta^(2k-2i)`; the closed forms below are the
//! implementation, the root sums are kept as an independent cross-check.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{self, binomial, int, sym_to_c, GradedPoly, Int, Rat, SymPoly, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("a({g}, {mu}) is undefined: mu exceeds floor(g/2)")]
    CoefficientOutOfRange { g: u32, mu: i64 },
}

/// Memoized table of the `b`, `d` classes. Write-once per key behind a lock;
/// safe to share across threads.
#[derive(Default)]
pub struct ClassTable {
    b: Mutex<HashMap<u32, GradedPoly>>,
    d: Mutex<HashMap<u32, GradedPoly>>,
}

impl ClassTable {
    pub fn new() -> Self {
        ClassTable::default()
    }

    /// `b_k`, homogeneous of degree `2k`; `b_0 = 1`.
    pub fn b(&self, k: u32) -> GradedPoly {
        let mut map = self.b.lock().unwrap();
        map.entry(k).or_insert_with(|| arith::b_poly(k)).clone()
    }

    /// `d_k`, homogeneous of degree `4k`; `d_0 = 1`.
    pub fn d(&self, k: u32) -> GradedPoly {
        let mut map = self.d.lock().unwrap();
        map.entry(k).or_insert_with(|| arith::d_poly(k)).clone()
    }

    /// `b_k` extended by the empty-sum convention `b_(-1) = 0`.
    pub fn b_ext(&self, k: i64) -> GradedPoly {
        match k {
            -1 => GradedPoly::zero(),
            k if k >= 0 => self.b(k as u32),
            _ => panic!("b_ext({k}) undefined"),
        }
    }

    /// `d_k` extended by `d_(-1) = 0`.
    pub fn d_ext(&self, k: i64) -> GradedPoly {
        match k {
            -1 => GradedPoly::zero(),
            k if k >= 0 => self.d(k as u32),
            _ => panic!("d_ext({k}) undefined"),
        }
    }

    /// Sign-normalized `(-1)^k b_k`, i.e. the plain complete homogeneous sum
    /// of the roots; `k = -1` gives zero.
    pub fn b_bar(&self, k: i64) -> GradedPoly {
        let p = self.b_ext(k);
        if k >= 0 && k % 2 == 1 {
            p.neg()
        } else {
            p
        }
    }

    /// Sign-normalized `(-1)^k d_k`; `k = -1` gives zero.
    pub fn d_bar(&self, k: i64) -> GradedPoly {
        let p = self.d_ext(k);
        if k >= 0 && k % 2 == 1 {
            p.neg()
        } else {
            p
        }
    }
}

/// Root-sum definition of `b_k`, rewritten through the elementary symmetric
/// classes. Kept separate from the closed form on purpose: the two routes
/// check each other.
pub fn b_root_definition(k: u32) -> GradedPoly {
    let p = SymPoly::from_fn(k, |_| int(1)).unwrap();
    let q = sym_to_c(&p);
    if k % 2 == 0 {
        q
    } else {
        q.neg()
    }
}

/// Root-sum definition of `d_k` via `alpha^(2i) beta^(2k-2i)`.
pub fn d_root_definition(k: u32) -> GradedPoly {
    let p = SymPoly::from_fn(2 * k, |i| if i % 2 == 0 { int(1) } else { int(0) }).unwrap();
    let q = sym_to_c(&p);
    if k % 2 == 0 {
        q
    } else {
        q.neg()
    }
}

/// The integer coefficient `a_{g,mu}`: `-1` at `mu = 0`, `0` at `mu = -1`,
/// and `(-1)^(1+mu) (g/mu) C(g-1-mu, mu-1)` for `1 <= mu <= floor(g/2)`.
pub fn a(g: u32, mu: i64) -> Result<Int, ClassError> {
    match mu {
        -1 => Ok(Int::zero()),
        0 => Ok(-Int::one()),
        mu if mu >= 1 && mu as u32 <= g / 2 => {
            let num = int(g as i64) * binomial(g as i64 - 1 - mu, mu - 1);
            let (q, r) = num.div_rem(&int(mu));
            assert!(r.is_zero(), "a({g}, {mu}) is not integral");
            Ok(if (mu + 1) % 2 == 0 { q } else { -q })
        }
        _ => Err(ClassError::CoefficientOutOfRange { g, mu }),
    }
}

use num_integer::Integer as _;

/// `f_n(x) = (1+x)^n - (1+x^n)`.
pub fn defect_poly(n: u32) -> UniPoly {
    let mut p = UniPoly::one_plus_x_pow(n as usize);
    p = p.sub(&UniPoly::one());
    p.sub(&UniPoly::monomial(Rat::one(), n as usize))
}

/// Checks that the alternating convolution
/// `sum_{mu=0}^{h} (-1)^mu c2^(h-mu) b_(2mu)` collapses to `d_h`, exactly in
/// `Z[c1, c2]`.
pub fn d_convolution_holds(table: &ClassTable, h: u32) -> bool {
    let mut lhs = GradedPoly::zero();
    for mu in 0..=h {
        let sign = if mu % 2 == 0 { Rat::one() } else { -Rat::one() };
        let c2pow = GradedPoly::c2().pow(h - mu);
        lhs = lhs.add(&c2pow.mul(&table.b(2 * mu)).scale(&sign));
    }
    lhs == table.d(h)
}

/// Checks the defining expansion of the `a_{g,mu}`:
/// `(1+x)^g = 1 + x^g + sum_{mu=1}^{floor(g/2)} a_{g,mu} x^mu (1+x)^(g-2mu)`.
pub fn defect_expansion_holds(g: u32) -> bool {
    let mut rhs = UniPoly::one().add(&UniPoly::monomial(Rat::one(), g as usize));
    for mu in 1..=g / 2 {
        let c = Rat::from_integer(a(g, mu as i64).unwrap());
        let t = UniPoly::one_plus_x_pow((g - 2 * mu) as usize)
            .shift(mu as usize)
            .scale(&c);
        rhs = rhs.add(&t);
    }
    rhs == UniPoly::one_plus_x_pow(g as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Mono};

    fn gp(terms: &[(u32, u32, i64)]) -> GradedPoly {
        let mut p = GradedPoly::zero();
        for &(a, b, c) in terms {
            p.add_term(Mono::new(a, b), rat(c));
        }
        p
    }

    #[test]
    fn b_small_values() {
        let t = ClassTable::new();
        assert_eq!(t.b(0), GradedPoly::one());
        assert_eq!(t.b(2), gp(&[(2, 0, 1), (0, 1, -1)]));
        assert_eq!(t.b(3), gp(&[(3, 0, -1), (1, 1, 2)]));
        assert_eq!(t.b(2).homogeneous_degree(), Some(4));
    }

    #[test]
    fn d_small_values() {
        let t = ClassTable::new();
        assert_eq!(t.d(0), GradedPoly::one());
        assert_eq!(t.d(1), gp(&[(2, 0, -1), (0, 1, 2)]));
        assert_eq!(t.d(2), gp(&[(4, 0, 1), (2, 1, -4), (0, 2, 3)]));
        assert_eq!(t.d(2).homogeneous_degree(), Some(8));
    }

    #[test]
    fn closed_forms_match_root_sums() {
        let t = ClassTable::new();
        for k in 0..=12 {
            assert_eq!(t.b(k), b_root_definition(k), "b_{k}");
            assert_eq!(t.d(k), d_root_definition(k), "d_{k}");
        }
    }

    #[test]
    fn inhomogeneous_images_are_geometric_sums() {
        let t = ClassTable::new();
        for k in 0..=10u32 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let bx = t.b(k).to_inhomogeneous(2 * k).unwrap();
            assert_eq!(bx, UniPoly::geometric(k as usize + 1).scale(&rat(sign)));
            let dx = t.d(k).to_inhomogeneous(4 * k).unwrap();
            let mut even = UniPoly::zero();
            for i in 0..=k {
                even = even.add(&UniPoly::monomial(Rat::one(), 2 * i as usize));
            }
            assert_eq!(dx, even.scale(&rat(sign)));
        }
    }

    #[test]
    fn a_values() {
        assert_eq!(a(4, 2).unwrap(), int(-2));
        assert_eq!(a(5, 2).unwrap(), int(-5));
        assert_eq!(a(7, 0).unwrap(), int(-1));
        assert_eq!(a(5, 1).unwrap(), int(5));
        assert_eq!(a(9, -1).unwrap(), int(0));
        assert_eq!(
            a(3, 2).unwrap_err(),
            ClassError::CoefficientOutOfRange { g: 3, mu: 2 }
        );
    }

    #[test]
    fn a_last_term_parity() {
        for s in 1..=12u32 {
            let sign = if (s + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(a(2 * s, s as i64).unwrap(), int(2 * sign));
            assert_eq!(a(2 * s + 1, s as i64).unwrap(), int((2 * s as i64 + 1) * sign));
        }
    }

    #[test]
    fn defect_poly_values() {
        assert_eq!(defect_poly(1), UniPoly::zero());
        assert_eq!(defect_poly(2), UniPoly::from_int_coeffs(&[0, 2]));
        assert_eq!(defect_poly(4), UniPoly::from_int_coeffs(&[0, 4, 6, 4]));
    }

    #[test]
    fn d_convolution_small() {
        let t = ClassTable::new();
        for h in [0, 1, 5] {
            assert!(d_convolution_holds(&t, h), "h = {h}");
        }
    }

    #[test]
    fn defect_expansion_small() {
        for g in [2, 5, 40] {
            assert!(defect_expansion_holds(g), "g = {g}");
        }
    }
}
