//! Exact coefficient arithmetic and the coordinate systems used everywhere else:
//! dense univariate polynomials over `Rat`, sparse graded polynomials in the
//! generators `c1` (degree 2), `c2` (degree 4) and the Euler class `chi`
//! (degree `2m-4`, even contexts only), and symmetric polynomials in the two
//! Chern roots `alpha`, `beta`.
//!
//! Degrees are topological throughout: `|c1| = 2`, `|c2| = 4`. The
//! inhomogeneous representation substitutes `c1 -> 1+x`, `c2 -> x`, which
//! identifies the degree-`2k` homogeneous piece with palindromic polynomials
//! of degree at most `k` centered at `k/2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("polynomial in alpha, beta is not symmetric")]
    NotSymmetric,
    #[error("expected a homogeneous polynomial of degree {expected}, found a term of degree {found}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("operation is defined for chi-free polynomials only")]
    ChiPresent,
    #[error("polynomial is not palindromic about degree {0}/2; not in the image of the graded ring")]
    NotPalindromic(u32),
    #[error("mixed chi contexts: m={0} vs m={1}")]
    MixedContext(u32, u32),
    #[error("inexact polynomial division")]
    InexactDivision,
}

/// Binomial coefficient, zero outside the usual range for `n >= 0`, and the
/// Pascal-recurrence extension for negative `n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    if n >= 0 {
        if k > n {
            return Int::zero();
        }
        let k = k.min(n - k);
        let mut acc = Int::one();
        for i in 0..k {
            acc = acc * int(n - i) / int(i + 1);
        }
        acc
    } else {
        let v = binomial(k - n - 1, k);
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over `Rat`; the coefficient list never ends in
/// a zero unless the polynomial is zero (empty list).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn x() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    /// `x^a - 1`
    pub fn x_pow_minus_one(a: usize) -> Self {
        let mut p = UniPoly::monomial(Rat::one(), a);
        if a == 0 {
            return UniPoly::zero();
        }
        p.coeffs[0] = -Rat::one();
        p
    }

    /// `1 + x + ... + x^(a-1)`; zero for `a = 0`.
    pub fn geometric(a: usize) -> Self {
        UniPoly::new(vec![Rat::one(); a])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            return Err(ArithError::InexactDivision);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dd = other.coeffs.len() - 1;
        let lead = other.coeffs.last().unwrap();
        if rem.len() < other.coeffs.len() {
            return Err(ArithError::InexactDivision);
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / lead;
            quot[i - dd] = q.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &q * b;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ArithError::InexactDivision);
        }
        Ok(UniPoly::new(quot))
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// `(1+x)^a`
    pub fn one_plus_x_pow(a: usize) -> Self {
        let mut coeffs = Vec::with_capacity(a + 1);
        for k in 0..=a {
            coeffs.push(Rat::from_integer(binomial(a as i64, k as i64)));
        }
        UniPoly { coeffs }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Graded polynomials in c1, c2, chi
// ---------------------------------------------------------------------------

/// Monomial key `c1^c1 * c2^c2 * chi^(chi as u32)`. The derived order is
/// lexicographic on `(chi, c2, c1)`, which puts the chi-free block first and
/// fixes the coordinate order used by every matrix in the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Mono {
    pub chi: bool,
    pub c2: u32,
    pub c1: u32,
}

impl Mono {
    pub fn new(c1: u32, c2: u32) -> Self {
        Mono { chi: false, c2, c1 }
    }

    pub fn with_chi(c1: u32, c2: u32) -> Self {
        Mono { chi: true, c2, c1 }
    }

    /// Topological degree; `m` is required when the chi factor is present.
    pub fn degree(&self, m: Option<u32>) -> u32 {
        let base = 2 * self.c1 + 4 * self.c2;
        if self.chi {
            let m = m.expect("chi monomial outside an even context");
            base + 2 * m - 4
        } else {
            base
        }
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.c1 == 1 {
            parts.push("c1".to_string());
        } else if self.c1 > 1 {
            parts.push(format!("c1^{}", self.c1));
        }
        if self.c2 == 1 {
            parts.push("c2".to_string());
        } else if self.c2 > 1 {
            parts.push(format!("c2^{}", self.c2));
        }
        if self.chi {
            parts.push("chi".to_string());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Sparse polynomial in `c1`, `c2` and optionally `chi`. Every stored
/// coefficient is nonzero. `ctx` carries the even-context parameter `m`
/// (`deg chi = 2m-4`); chi-free polynomials may leave it unset. Products
/// rewrite `chi^2` to its defining chi-free class so the chi exponent stays
/// in `{0, 1}`.
#[derive(Clone, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Mono, Rat>,
    ctx: Option<u32>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

/// `chi^2` in context `m`: the degree-`4(m-2)` class `d_{m-2}` written out in
/// `c1`, `c2`.
fn chi_square(m: u32) -> GradedPoly {
    d_poly(m - 2)
}

/// Closed form for the class `d_k` (degree `4k`).
pub(crate) fn d_poly(k: u32) -> GradedPoly {
    let mut p = GradedPoly::zero();
    for mu in 0..=k {
        let sign = if (k + mu) % 2 == 0 { 1 } else { -1 };
        let c = binomial((2 * k - mu + 1) as i64, mu as i64) * int(sign);
        p.add_term(Mono::new(2 * (k - mu), mu), Rat::from_integer(c));
    }
    p
}

/// Closed form for the class `b_k` (degree `2k`).
pub(crate) fn b_poly(k: u32) -> GradedPoly {
    let mut p = GradedPoly::zero();
    for mu in 0..=k / 2 {
        let sign = if (k + mu) % 2 == 0 { 1 } else { -1 };
        let c = binomial((k - mu) as i64, mu as i64) * int(sign);
        p.add_term(Mono::new(k - 2 * mu, mu), Rat::from_integer(c));
    }
    p
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(Mono::new(0, 0), c);
        p
    }

    pub fn c1() -> Self {
        GradedPoly::monomial(Mono::new(1, 0), Rat::one())
    }

    pub fn c2() -> Self {
        GradedPoly::monomial(Mono::new(0, 1), Rat::one())
    }

    /// The Euler class generator of the even context `m`.
    pub fn chi(m: u32) -> Self {
        let mut p = GradedPoly::monomial(Mono::with_chi(0, 0), Rat::one());
        p.ctx = Some(m);
        p
    }

    pub fn monomial(mono: Mono, c: Rat) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(mono, c);
        p
    }

    pub fn ctx(&self) -> Option<u32> {
        self.ctx
    }

    pub fn with_ctx(mut self, m: u32) -> Self {
        self.ctx = Some(m);
        self
    }

    pub fn with_ctx_opt(self, m: Option<u32>) -> Self {
        match m {
            Some(m) => self.with_ctx(m),
            None => self,
        }
    }

    fn merge_ctx(&self, other: &Self) -> Option<u32> {
        match (self.ctx, other.ctx) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed chi contexts: m={a} vs m={b}");
                Some(a)
            }
            (a, b) => a.or(b),
        }
    }

    pub fn add_term(&mut self, mono: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_chi(&self) -> bool {
        self.terms.keys().any(|m| m.chi)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.ctx = self.merge_ctx(other);
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            ctx: self.ctx,
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return GradedPoly {
                terms: BTreeMap::new(),
                ctx: self.ctx,
            };
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
            ctx: self.ctx,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = self.merge_ctx(other);
        let mut out = GradedPoly::zero();
        out.ctx = ctx;
        let mut chi_sq: Option<GradedPoly> = None;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                let c1 = ma.c1 + mb.c1;
                let c2 = ma.c2 + mb.c2;
                match (ma.chi, mb.chi) {
                    (false, false) => out.add_term(Mono::new(c1, c2), c),
                    (true, false) | (false, true) => out.add_term(Mono::with_chi(c1, c2), c),
                    (true, true) => {
                        let m = ctx.expect("chi product outside an even context");
                        let sq = chi_sq.get_or_insert_with(|| chi_square(m));
                        for (ms, cs) in &sq.terms {
                            out.add_term(Mono::new(c1 + ms.c1, c2 + ms.c2), &c * cs);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GradedPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits into homogeneous parts keyed by topological degree. Re-summing
    /// the parts gives back the polynomial.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, GradedPoly> {
        let mut parts: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.degree(self.ctx);
            let p = parts.entry(d).or_insert_with(|| GradedPoly {
                terms: BTreeMap::new(),
                ctx: self.ctx,
            });
            p.add_term(*m, c.clone());
        }
        parts
    }

    /// Degree if homogeneous (zero polynomial reports `Some(0)`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(self.ctx);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Substitutes `c1 -> 1+x`, `c2 -> x` on a chi-free homogeneous
    /// polynomial of topological degree `deg = 2k`; the result has degree at
    /// most `k`.
    pub fn to_inhomogeneous(&self, deg: u32) -> Result<UniPoly, ArithError> {
        if self.has_chi() {
            return Err(ArithError::ChiPresent);
        }
        if deg % 2 != 0 {
            return Err(ArithError::NotHomogeneous {
                expected: deg,
                found: deg,
            });
        }
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let d = 2 * m.c1 + 4 * m.c2;
            if d != deg {
                return Err(ArithError::NotHomogeneous {
                    expected: deg,
                    found: d,
                });
            }
            let t = UniPoly::one_plus_x_pow(m.c1 as usize)
                .shift(m.c2 as usize)
                .scale(c);
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Inverse of [`to_inhomogeneous`](Self::to_inhomogeneous) onto the
    /// degree-`2k` homogeneous piece: requires the input to be palindromic
    /// about `k/2` and peels it into the `c1^(k-2mu) c2^mu` basis.
    pub fn from_inhomogeneous(p: &UniPoly, k: u32) -> Result<GradedPoly, ArithError> {
        if let Some(d) = p.degree() {
            if d > k as usize {
                return Err(ArithError::NotPalindromic(2 * k));
            }
        }
        for s in 0..=k as usize {
            if p.coeff(s) != p.coeff(k as usize - s) {
                return Err(ArithError::NotPalindromic(2 * k));
            }
        }
        let mut rem = p.clone();
        let mut out = GradedPoly::zero();
        while let Some(mu) = rem.valuation() {
            if 2 * mu > k as usize {
                return Err(ArithError::NotPalindromic(2 * k));
            }
            let c = rem.coeff(mu);
            out.add_term(Mono::new(k - 2 * mu as u32, mu as u32), c.clone());
            let t = UniPoly::one_plus_x_pow(k as usize - 2 * mu)
                .shift(mu)
                .scale(&c);
            rem = rem.sub(&t);
        }
        Ok(out)
    }

    /// True when every coefficient has an odd denominator, i.e. the
    /// polynomial is 2-locally integral.
    pub fn denominators_odd(&self) -> bool {
        use num_integer::Integer;
        self.terms.values().all(|c| c.denom().is_odd())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", m.label())?;
            } else {
                write!(f, "({}) {}", c, m.label())?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Symmetric polynomials in the Chern roots
// ---------------------------------------------------------------------------

/// Integer polynomial in the two roots `alpha`, `beta`, symmetric under the
/// swap; the symmetry is checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<(u32, u32), Int>,
}

impl SymPoly {
    pub fn new(terms: BTreeMap<(u32, u32), Int>) -> Result<Self, ArithError> {
        let terms: BTreeMap<(u32, u32), Int> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for ((i, j), c) in &terms {
            if terms.get(&(*j, *i)) != Some(c) {
                return Err(ArithError::NotSymmetric);
            }
        }
        Ok(SymPoly { terms })
    }

    /// `sum_{i+j=k} coeff(i) alpha^i beta^(k-i)` from a symmetric coefficient
    /// function.
    pub fn from_fn(k: u32, coeff: impl Fn(u32) -> Int) -> Result<Self, ArithError> {
        let mut terms = BTreeMap::new();
        for i in 0..=k {
            let c = coeff(i);
            if !c.is_zero() {
                terms.insert((i, k - i), c);
            }
        }
        SymPoly::new(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Rewrites a symmetric polynomial in the roots as a polynomial in the
/// elementary symmetric classes `c1 = alpha + beta`, `c2 = alpha beta`.
pub fn sym_to_c(p: &SymPoly) -> GradedPoly {
    let mut rem = p.terms.clone();
    let mut out = GradedPoly::zero();
    // Peel the lex-leading monomial alpha^i beta^j (i >= j): it is the lead
    // of c1^(i-j) c2^j.
    while let Some((&(i, j), _)) = rem.iter().filter(|((i, j), _)| i >= j).next_back() {
        let c = rem.get(&(i, j)).unwrap().clone();
        out.add_term(Mono::new(i - j, j), Rat::from_integer(c.clone()));
        // subtract c * (alpha+beta)^(i-j) * (alpha beta)^j
        for s in 0..=(i - j) {
            let term = binomial((i - j) as i64, s as i64) * &c;
            let key = (j + s, i - s);
            let entry = rem.entry(key).or_insert_with(Int::zero);
            *entry -= term;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
    }
    debug_assert!(rem.is_empty(), "asymmetric residue in sym_to_c");
    out
}
