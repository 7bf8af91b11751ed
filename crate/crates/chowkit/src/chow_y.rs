//! The integral Chow ring of `Y_n`.
//!
//! The monomial sublattice `A_n` is spanned by `c1^a c2^b v1^e1 v2^e2` with
//! `b <= m-2`, `a <= m-2-b`, where `v1`, `v2` are the two half-integral
//! classes of the parity of `n`. The integral ring replaces a parity-specific
//! set of the `v1 v2`-monomials by divided elements `<xi>/l` built from the
//! eight defining formulas below; the divisors `l` are odd and their product
//! is the index `[CH(Y_n) : A_n]`.
//!
//! Everything the construction claims is verified mechanically: per-degree
//! ranks against the rational ring, integrality of all pairwise products
//! (the structure constants), the index against both the divisor product and
//! its closed form, and mod-p dimensions against the module presentations.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{int, ratio, GradedPoly, Int, Mono, Rat};
use crate::classes::{a, ClassTable};
use crate::lattice::{GradedLattice, IntMatrix, LatticeError};
use crate::linalg::RatMat;
use crate::quotient::{mod_p_module_dims, QuotientError, QuotientRing, RingElem};

#[derive(Debug, Error)]
pub enum ChowError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("basis rank {basis} at degree {degree} does not match the ring dimension {ring}")]
    RankMismatch { degree: u32, basis: usize, ring: usize },
    #[error("divided element {label} is not odd-locally integral: a defining formula is wrong")]
    DividedElementNotIntegral { label: String },
    #[error("product of basis elements {i} and {j} has non-integral coordinates")]
    NonIntegralProduct { i: usize, j: usize },
    #[error("index mismatch: change of basis {computed}, divisor product {from_divisors}, closed form {closed_form}")]
    IndexMismatch {
        computed: Int,
        from_divisors: Int,
        closed_form: Int,
    },
    #[error("element of degree {degree} is outside the lattice")]
    OutsideLattice { degree: u32 },
}

/// The four parity cases of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    EvenNEvenM,
    EvenNOddM,
    OddNEvenM,
    OddNOddM,
}

impl ParityCase {
    pub fn of(n: u32) -> Self {
        let even = n % 2 == 0;
        let m = if even { n / 2 } else { (n - 1) / 2 };
        match (even, m % 2 == 0) {
            (true, true) => ParityCase::EvenNEvenM,
            (true, false) => ParityCase::EvenNOddM,
            (false, true) => ParityCase::OddNEvenM,
            (false, false) => ParityCase::OddNOddM,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ParityCase::EvenNEvenM => "even-n-even-m",
            ParityCase::EvenNOddM => "even-n-odd-m",
            ParityCase::OddNEvenM => "odd-n-even-m",
            ParityCase::OddNOddM => "odd-n-odd-m",
        }
    }
}

/// How a basis element was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisOrigin {
    /// `c1^a c2^b v1^e1 v2^e2` straight from the monomial sublattice.
    Monomial { c1: u32, c2: u32, v1: bool, v2: bool },
    /// `<xi>/l` where `xi = c1^a c2^b v1 v2` and `formula` in `1..=8` names
    /// the defining combination.
    Divided {
        formula: u8,
        param: u32,
        divisor: u32,
        c1: u32,
        c2: u32,
    },
}

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub label: String,
    pub degree: u32,
    pub origin: BasisOrigin,
    /// Canonical rational coordinates in the ambient ring at `degree`.
    pub coords: Vec<Rat>,
    /// The defining polynomial (divided elements carry the divisor already).
    pub poly: GradedPoly,
}

/// Integer structure constants: coordinates of `e_i e_j` in the basis of the
/// product degree; pairs whose degree sum exceeds the top degree multiply to
/// zero and are not stored.
#[derive(Clone, Debug, Default)]
pub struct StructureConstants {
    table: BTreeMap<(usize, usize), Vec<Int>>,
}

impl StructureConstants {
    fn key(i: usize, j: usize) -> (usize, usize) {
        (i.min(j), i.max(j))
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&Vec<Int>> {
        self.table.get(&Self::key(i, j))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Int>)> {
        self.table.iter()
    }
}

pub struct ChowY {
    n: u32,
    m: u32,
    case: ParityCase,
    ring: QuotientRing,
    classes: ClassTable,
    basis: Vec<BasisElem>,
    by_degree: BTreeMap<u32, Vec<usize>>,
    lattice: GradedLattice,
    monomial_lattice: GradedLattice,
    /// Per-degree inverse of the basis matrix, for coordinate solves.
    inverses: BTreeMap<u32, RatMat>,
    divisors: Vec<u32>,
    c1_index: usize,
}

impl ChowY {
    pub fn build(n: u32) -> Result<ChowY, ChowError> {
        let ring = QuotientRing::build(n)?;
        let m = ring.m();
        let case = ParityCase::of(n);
        let classes = ClassTable::new();
        let [v1, v2] = ring.v_polys();
        let [dv1, dv2] = ring.v_degrees();

        // replacement set: (c1 exponent, c2 exponent) of xi -> (formula, param, divisor)
        let mut replacements: BTreeMap<(u32, u32), (u8, u32, u32)> = BTreeMap::new();
        {
            let m = m as i64;
            let mut insert = |a: i64, b: i64, f: u8, p: i64, l: i64| {
                replacements.insert((a as u32, b as u32), (f, p as u32, l as u32));
            };
            match case {
                ParityCase::EvenNEvenM => {
                    for i in 0..=m / 2 - 2 {
                        insert(2 * i + 1, 1, 1, i, 2 * i + 3);
                    }
                    for j in 1..=m / 2 - 2 {
                        insert(m - 2 * j - 3, 2 * j + 1, 2, j, m - 2 * j - 1);
                    }
                }
                ParityCase::EvenNOddM => {
                    for i in 0..=(m - 5) / 2 {
                        insert(2 * i + 1, 1, 3, i, 2 * i + 3);
                    }
                    for j in 1..=(m - 3) / 2 {
                        insert(m - 2 * j - 2, 2 * j, 4, j, m - 2 * j);
                    }
                }
                ParityCase::OddNEvenM => {
                    for i in 0..=m / 2 - 2 {
                        insert(2 * i + 1, 1, 5, i, 2 * i + 3);
                    }
                    for j in 1..=m / 2 - 2 {
                        insert(m - 2 * j - 3, 2 * j + 1, 6, j, m - 2 * j - 1);
                    }
                }
                ParityCase::OddNOddM => {
                    for i in 0..=(m - 3) / 2 {
                        insert(2 * i + 1, 0, 7, i, 2 * i + 3);
                    }
                    for j in 1..=(m - 3) / 2 {
                        insert(m - 2 * j - 2, 2 * j, 8, j, m - 2 * j);
                    }
                }
            }
        }

        let v_label = |e1: bool, e2: bool| -> String {
            let mut s = String::new();
            if e1 {
                s.push_str(&format!(" v{dv1}"));
            }
            if e2 {
                s.push_str(&format!(" v{dv2}"));
            }
            s
        };

        let mut basis: Vec<BasisElem> = Vec::new();
        let mut monomials: Vec<BasisElem> = Vec::new();
        let mut divisors: Vec<u32> = Vec::new();
        for b in 0..=m - 2 {
            for a_exp in 0..=m - 2 - b {
                for (e1, e2) in [(false, false), (true, false), (false, true), (true, true)] {
                    let mono = Mono::new(a_exp, b);
                    let mut poly = GradedPoly::monomial(mono, Rat::one());
                    if e1 {
                        poly = poly.mul(&v1);
                    }
                    if e2 {
                        poly = poly.mul(&v2);
                    }
                    let degree = 2 * a_exp
                        + 4 * b
                        + if e1 { dv1 } else { 0 }
                        + if e2 { dv2 } else { 0 };
                    let label = {
                        let head = mono.label();
                        let vs = v_label(e1, e2);
                        if head == "1" && !vs.is_empty() {
                            vs.trim_start().to_string()
                        } else {
                            format!("{head}{vs}")
                        }
                    };
                    let monomial_elem = BasisElem {
                        label: label.clone(),
                        degree,
                        origin: BasisOrigin::Monomial {
                            c1: a_exp,
                            c2: b,
                            v1: e1,
                            v2: e2,
                        },
                        coords: Vec::new(),
                        poly: poly.clone(),
                    };
                    monomials.push(monomial_elem.clone());

                    let replaced = (e1 && e2)
                        .then(|| replacements.get(&(a_exp, b)))
                        .flatten();
                    match replaced {
                        None => basis.push(monomial_elem),
                        Some(&(formula, param, divisor)) => {
                            divisors.push(divisor);
                            let numerator =
                                divided_numerator(formula, param, m, &classes, &v1, &v2);
                            let divided =
                                numerator.scale(&ratio(1, divisor as i64));
                            basis.push(BasisElem {
                                label: format!("<{label}>/{divisor}"),
                                degree,
                                origin: BasisOrigin::Divided {
                                    formula,
                                    param,
                                    divisor,
                                    c1: a_exp,
                                    c2: b,
                                },
                                coords: Vec::new(),
                                poly: divided,
                            });
                        }
                    }
                }
            }
        }

        // coordinates, with the odd-local integrality check on every element
        for e in basis.iter_mut().chain(monomials.iter_mut()) {
            let nf = ring.normal_form(&e.poly);
            let (deg, coords) = nf.single().unwrap_or_else(|| {
                panic!("basis element {} is zero or inhomogeneous in the ambient ring", e.label)
            });
            assert_eq!(deg, e.degree, "degree bookkeeping for {}", e.label);
            // denominators may only carry powers of two (the v-halves); an
            // odd factor would mean a defining formula failed to divide
            for c in coords {
                let mut den = c.denom().clone();
                while den.is_even() {
                    den /= 2;
                }
                if !den.is_one() {
                    return Err(ChowError::DividedElementNotIntegral {
                        label: e.label.clone(),
                    });
                }
            }
            e.coords = coords.clone();
        }

        basis.sort_by_key(|e| e.degree);
        monomials.sort_by_key(|e| e.degree);

        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (idx, e) in basis.iter().enumerate() {
            by_degree.entry(e.degree).or_default().push(idx);
        }
        for (&deg, idxs) in &by_degree {
            let ring_dim = ring.dim(deg);
            if idxs.len() != ring_dim {
                return Err(ChowError::RankMismatch {
                    degree: deg,
                    basis: idxs.len(),
                    ring: ring_dim,
                });
            }
        }

        let collect_lattice = |elems: &[BasisElem]| {
            let mut cols: BTreeMap<u32, Vec<Vec<Rat>>> = BTreeMap::new();
            for e in elems {
                cols.entry(e.degree).or_default().push(e.coords.clone());
            }
            GradedLattice::new(cols)
        };
        let lattice = collect_lattice(&basis);
        let monomial_lattice = collect_lattice(&monomials);

        let mut inverses = BTreeMap::new();
        for (&deg, idxs) in &by_degree {
            let cols: Vec<Vec<Rat>> = idxs.iter().map(|&i| basis[i].coords.clone()).collect();
            let mat = RatMat::from_columns(cols[0].len(), &cols);
            let inv = mat.inverse().unwrap_or_else(|| {
                panic!("degenerate basis at degree {deg} (n = {n})")
            });
            inverses.insert(deg, inv);
        }

        let c1_index = basis
            .iter()
            .position(|e| {
                matches!(
                    e.origin,
                    BasisOrigin::Monomial { c1: 1, c2: 0, v1: false, v2: false }
                )
            })
            .expect("c1 is a basis element");

        Ok(ChowY {
            n,
            m,
            case,
            ring,
            classes,
            basis,
            by_degree,
            lattice,
            monomial_lattice,
            inverses,
            divisors,
            c1_index,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn case(&self) -> ParityCase {
        self.case
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn classes(&self) -> &ClassTable {
        &self.classes
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn basis_at(&self, degree: u32) -> &[usize] {
        self.by_degree.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn rank_at(&self, degree: u32) -> usize {
        self.basis_at(degree).len()
    }

    pub fn top_degree(&self) -> u32 {
        self.ring.top_degree()
    }

    pub fn lattice(&self) -> &GradedLattice {
        &self.lattice
    }

    pub fn monomial_lattice(&self) -> &GradedLattice {
        &self.monomial_lattice
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn c1_basis_index(&self) -> usize {
        self.c1_index
    }

    /// Rational coordinates of a single-degree element in the integral
    /// basis of its degree.
    pub fn rational_coords(&self, e: &RingElem) -> Option<(u32, Vec<Rat>)> {
        if e.is_zero() {
            return Some((0, Vec::new()));
        }
        let (deg, v) = e.single()?;
        let inv = self.inverses.get(&deg)?;
        Some((deg, inv.mul_vec(v)))
    }

    /// Renders a single-degree element as a combination of the basis
    /// elements of its degree.
    pub fn format_in_basis(&self, e: &RingElem) -> String {
        let Some((deg, coords)) = self.rational_coords(e) else {
            return "<inhomogeneous>".to_string();
        };
        let mut parts: Vec<String> = Vec::new();
        for (&idx, c) in self.basis_at(deg).iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            let label = &self.basis[idx].label;
            if c.is_one() {
                parts.push(label.clone());
            } else if (-c.clone()).is_one() {
                parts.push(format!("-{label}"));
            } else {
                parts.push(format!("({c}) {label}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Integer coordinates when the element lies in the lattice.
    pub fn integral_coords(&self, e: &RingElem) -> Result<(u32, Vec<Int>), ChowError> {
        let (deg, coords) = self
            .rational_coords(e)
            .ok_or(ChowError::OutsideLattice { degree: 0 })?;
        let mut out = Vec::with_capacity(coords.len());
        for c in coords {
            if !c.denom().is_one() {
                return Err(ChowError::OutsideLattice { degree: deg });
            }
            out.push(c.numer().clone());
        }
        Ok((deg, out))
    }

    /// Verifies that every pairwise product of basis elements has integer
    /// coordinates in the basis, and returns the structure constants.
    pub fn verify_closure(&self) -> Result<StructureConstants, ChowError> {
        let top = self.top_degree();
        let pairs: Vec<(usize, usize)> = (0..self.basis.len())
            .flat_map(|i| (i..self.basis.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.basis[i].degree + self.basis[j].degree <= top)
            .collect();
        let results: Vec<((usize, usize), Result<Vec<Int>, ChowError>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let prod = self.basis[i].poly.mul(&self.basis[j].poly);
                let nf = self.ring.normal_form(&prod);
                let deg = self.basis[i].degree + self.basis[j].degree;
                let coords = match nf.part(deg) {
                    None => Ok(vec![Int::zero(); self.rank_at(deg)]),
                    Some(v) => {
                        let x = self.inverses[&deg].mul_vec(v);
                        let mut out = Vec::with_capacity(x.len());
                        for c in &x {
                            if !c.denom().is_one() {
                                return ((i, j), Err(ChowError::NonIntegralProduct { i, j }));
                            }
                            out.push(c.numer().clone());
                        }
                        Ok(out)
                    }
                };
                ((i, j), coords)
            })
            .collect();
        let mut table = BTreeMap::new();
        for ((i, j), r) in results {
            table.insert((i, j), r?);
        }
        Ok(StructureConstants { table })
    }

    /// `(e_i e_j) e_k == e_i (e_j e_k)` evaluated through the structure
    /// constants.
    pub fn associativity_holds(
        &self,
        sc: &StructureConstants,
        i: usize,
        j: usize,
        k: usize,
    ) -> bool {
        self.triple_product(sc, i, j, k) == self.triple_product(sc, j, k, i)
    }

    /// Coordinates of `(e_a e_b) e_c` or `None` if its degree exceeds the top.
    fn triple_product(&self, sc: &StructureConstants, a: usize, b: usize, c: usize) -> Vec<Int> {
        let top = self.top_degree();
        let deg_ab = self.basis[a].degree + self.basis[b].degree;
        let total = deg_ab + self.basis[c].degree;
        if total > top {
            return Vec::new();
        }
        let ab = sc.product(a, b).expect("pair within top degree");
        let mut acc = vec![Int::zero(); self.rank_at(total)];
        for (t, coeff) in self.basis_at(deg_ab).iter().zip(ab) {
            if coeff.is_zero() {
                continue;
            }
            let tc = sc.product(*t, c).expect("pair within top degree");
            for (dst, v) in acc.iter_mut().zip(tc) {
                *dst += coeff * v;
            }
        }
        if acc.iter().all(|v| v.is_zero()) {
            Vec::new()
        } else {
            acc
        }
    }

    /// `[CH(Y_n) : A_n]`, computed as a change-of-basis determinant and
    /// cross-checked against the divisor product and the closed form.
    pub fn index_over_monomial_lattice(&self) -> Result<Int, ChowError> {
        let computed = GradedLattice::index_of(&self.monomial_lattice, &self.lattice)?;
        let mut from_divisors = Int::one();
        for &l in &self.divisors {
            from_divisors *= int(l as i64);
        }
        let closed_form = index_closed_form(self.n);
        if computed != from_divisors || computed != closed_form {
            return Err(ChowError::IndexMismatch {
                computed,
                from_divisors,
                closed_form,
            });
        }
        Ok(computed)
    }

    /// Per-degree dimensions of `CH(Y_n) (x) Z/p` (the lattice is free, so
    /// these are the per-degree ranks) against the presentation expanded
    /// over `Z/p`.
    pub fn mod_p_structure(&self, p: u32) -> ModPReport {
        let actual: BTreeMap<u32, usize> = self
            .by_degree
            .iter()
            .map(|(&d, idx)| (d, idx.len()))
            .collect();
        let expected = mod_p_module_dims(self.n, p, self.top_degree());
        let matches = actual == expected;
        ModPReport {
            p,
            actual,
            expected,
            matches,
        }
    }

    /// The matrices of multiplication by `c1`, keyed by source degree, in
    /// the integral basis. Requires verified structure constants.
    pub fn c1_matrix_family(&self, sc: &StructureConstants) -> BTreeMap<u32, IntMatrix> {
        let top = self.top_degree();
        let mut maps = BTreeMap::new();
        for (&d, idxs) in &self.by_degree {
            if d + 2 > top {
                break;
            }
            let target = self.basis_at(d + 2);
            let mut mat = IntMatrix::zero(target.len(), idxs.len());
            for (col, &j) in idxs.iter().enumerate() {
                let prod = sc
                    .product(self.c1_index, j)
                    .expect("c1 products lie within the top degree");
                for (row, v) in prod.iter().enumerate() {
                    mat[(row, col)] = v.clone();
                }
            }
            maps.insert(d, mat);
        }
        maps
    }

    /// Ambient per-degree ranks, for cokernel computations.
    pub fn degree_dims(&self) -> BTreeMap<u32, usize> {
        self.by_degree.iter().map(|(&d, v)| (d, v.len())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ModPReport {
    pub p: u32,
    pub actual: BTreeMap<u32, usize>,
    pub expected: BTreeMap<u32, usize>,
    pub matches: bool,
}

/// `(-1)^e`
fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `((-1)^i (2i+3) + 1) / 2`, the integer weight of the correction term in
/// the head formulas.
fn head_weight(i: i64) -> Rat {
    (sign(i) * ratio(2 * i + 3, 1) + Rat::one()) * ratio(1, 2)
}

/// The numerator `<xi>` of a divided basis element. `formula` follows the
/// fixed numbering 1..=8 of the defining combinations; `param` is the `i` or
/// `j` of the family.
pub(crate) fn divided_numerator(
    formula: u8,
    param: u32,
    m: u32,
    classes: &ClassTable,
    v1: &GradedPoly,
    v2: &GradedPoly,
) -> GradedPoly {
    let m = m as i64;
    let p = param as i64;
    let v12 = v1.mul(v2);
    let c1pow = |e: i64| GradedPoly::c1().pow(u32::try_from(e).expect("negative c1 exponent"));
    let c2pow = |e: i64| GradedPoly::c2().pow(u32::try_from(e).expect("negative c2 exponent"));
    let coeff_a = |g: i64, mu: i64| {
        Rat::from_integer(a(g as u32, mu).expect("expansion coefficient in range"))
    };

    // the trailing sum: sum_{mu=1}^{hi} a(g, mu) c1^(c1top - 2 mu) c2^(c2base + mu) * v12
    let tail = |g: i64, hi: i64, c1top: i64, c2base: i64| {
        let mut t = GradedPoly::zero();
        for mu in 1..=hi {
            let term = c1pow(c1top - 2 * mu)
                .mul(&c2pow(c2base + mu))
                .mul(&v12)
                .scale(&coeff_a(g, mu));
            t = t.add(&term);
        }
        t
    };

    match formula {
        // even n, even m: head c1^(2i+1) c2, divisor 2i+3
        1 => {
            let i = p;
            let head = c1pow(2 * i + 1).mul(&c2pow(1)).mul(&v12);
            let mid = c2pow(2 * i + 4)
                .mul(&classes.d_ext((m - 2 * i - 6) / 2))
                .mul(v1)
                .scale(&(sign(m / 2 + i + 1) * head_weight(i)));
            head.add(&mid).sub(&tail(2 * i + 3, i, 2 * i + 1, 1))
        }
        // even n, even m: head c1^(m-2j-3) c2^(2j+1), divisor m-2j-1
        2 => {
            let j = p;
            let head = c1pow(m - 2 * j - 3).mul(&c2pow(2 * j + 1)).mul(&v12);
            head.sub(&tail(m - 2 * j - 1, (m - 2 * j - 4) / 2, m - 2 * j - 3, 2 * j + 1))
        }
        // even n, odd m: head c1^(2i+1) c2, divisor 2i+3
        3 => {
            let i = p;
            let head = c1pow(2 * i + 1).mul(&c2pow(1)).mul(&v12);
            let mid = c2pow(2 * i + 3)
                .mul(&classes.d_ext((m - 2 * i - 5) / 2))
                .mul(v2)
                .scale(&(sign((m + 2 * i + 1) / 2) * head_weight(i)));
            head.add(&mid).sub(&tail(2 * i + 3, i, 2 * i + 1, 1))
        }
        // even n, odd m: head c1^(m-2j-2) c2^(2j), divisor m-2j
        4 => {
            let j = p;
            let head = c1pow(m - 2 * j - 2).mul(&c2pow(2 * j)).mul(&v12);
            head.sub(&tail(m - 2 * j, (m - 2 * j - 3) / 2, m - 2 * j - 2, 2 * j))
        }
        // odd n, even m: head c1^(2i+1) c2, divisor 2i+3
        5 => {
            let i = p;
            let head = c1pow(2 * i + 1).mul(&c2pow(1)).mul(&v12);
            let mid = c2pow(2 * i + 4)
                .mul(&classes.d_ext((m - 2 * i - 6) / 2))
                .mul(v2)
                .scale(&(sign(m / 2 + i + 1) * head_weight(i)));
            head.add(&mid).sub(&tail(2 * i + 3, i, 2 * i + 1, 1))
        }
        // odd n, even m: head c1^(m-2j-3) c2^(2j+1), divisor m-2j-1
        6 => {
            let j = p;
            let head = c1pow(m - 2 * j - 3).mul(&c2pow(2 * j + 1)).mul(&v12);
            head.sub(&tail(m - 2 * j - 1, (m - 2 * j - 4) / 2, m - 2 * j - 3, 2 * j + 1))
        }
        // odd n, odd m: head c1^(2i+1) (no c2), divisor 2i+3
        7 => {
            let i = p;
            let head = c1pow(2 * i + 1).mul(&v12);
            let mid = c2pow(2 * i + 3)
                .mul(&classes.d_ext((m - 2 * i - 5) / 2))
                .mul(v1)
                .scale(&(sign((m + 2 * i + 3) / 2) * head_weight(i)));
            head.add(&mid).sub(&tail(2 * i + 3, i, 2 * i + 1, 0))
        }
        // odd n, odd m: head c1^(m-2j-2) c2^(2j), divisor m-2j
        8 => {
            let j = p;
            let head = c1pow(m - 2 * j - 2).mul(&c2pow(2 * j)).mul(&v12);
            head.sub(&tail(m - 2 * j, (m - 2 * j - 3) / 2, m - 2 * j - 2, 2 * j))
        }
        other => panic!("unknown divided-element formula {other}"),
    }
}

/// Closed form for `[CH(Y_n) : A_n]`: for even `m` the product
/// `1^2 3^2 ... (m-3)^2 (m-1)`, for odd `m` the product `1^2 3^2 ... (m-2)^2`
/// times `m` when `n` is odd.
pub fn index_closed_form(n: u32) -> Int {
    let even = n % 2 == 0;
    let m = if even { n / 2 } else { (n - 1) / 2 } as i64;
    let odd_square_product = |top: i64| {
        let mut acc = Int::one();
        let mut o = 1;
        while o <= top {
            acc *= int(o) * int(o);
            o += 2;
        }
        acc
    };
    if m % 2 == 0 {
        odd_square_product(m - 3) * int(m - 1)
    } else if even {
        odd_square_product(m - 2)
    } else {
        odd_square_product(m - 2) * int(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_closed_form_values() {
        assert_eq!(index_closed_form(6), int(1));
        assert_eq!(index_closed_form(7), int(3));
        assert_eq!(index_closed_form(8), int(3));
        assert_eq!(index_closed_form(9), int(3));
        assert_eq!(index_closed_form(10), int(9));
        assert_eq!(index_closed_form(11), int(45));
        assert_eq!(index_closed_form(12), int(45));
        assert_eq!(index_closed_form(13), int(45));
    }

    #[test]
    fn replacement_sets_match_the_case_ranges() {
        // n=8: exactly one divided element, <c1 c2 v4 v6>/3
        let c = ChowY::build(8).unwrap();
        let divided: Vec<&BasisElem> = c
            .basis()
            .iter()
            .filter(|e| matches!(e.origin, BasisOrigin::Divided { .. }))
            .collect();
        assert_eq!(divided.len(), 1);
        assert_eq!(divided[0].label, "<c1 c2 v4 v6>/3");
        assert!(matches!(
            divided[0].origin,
            BasisOrigin::Divided { formula: 1, param: 0, divisor: 3, c1: 1, c2: 1 }
        ));

        // n=7: exactly one, via formula 7 (no c2 in the head)
        let c = ChowY::build(7).unwrap();
        let divided: Vec<&BasisElem> = c
            .basis()
            .iter()
            .filter(|e| matches!(e.origin, BasisOrigin::Divided { .. }))
            .collect();
        assert_eq!(divided.len(), 1);
        assert!(matches!(
            divided[0].origin,
            BasisOrigin::Divided { formula: 7, param: 0, divisor: 3, c1: 1, c2: 0 }
        ));

        // n=6: no replacements at all
        let c = ChowY::build(6).unwrap();
        assert!(c
            .basis()
            .iter()
            .all(|e| matches!(e.origin, BasisOrigin::Monomial { .. })));
        assert_eq!(c.index_over_monomial_lattice().unwrap(), int(1));
    }

    #[test]
    fn monomial_lattice_ranks() {
        for n in [6u32, 9] {
            let c = ChowY::build(n).unwrap();
            let m = c.m() as usize;
            assert_eq!(c.monomial_lattice().total_rank(), 2 * m * (m - 1));
            assert_eq!(c.rank(), 2 * m * (m - 1));
            assert_eq!(c.rank_at(0), 1);
        }
    }

    #[test]
    fn index_examples() {
        for (n, expect) in [(8u32, 3i64), (11, 45), (13, 45)] {
            let c = ChowY::build(n).unwrap();
            assert_eq!(c.index_over_monomial_lattice().unwrap(), int(expect));
        }
    }

    #[test]
    fn closure_and_named_products_n8() {
        let c = ChowY::build(8).unwrap();
        let sc = c.verify_closure().unwrap();

        // 1 * e = e
        let one = c
            .basis()
            .iter()
            .position(|e| e.degree == 0)
            .unwrap();
        for (j, e) in c.basis().iter().enumerate() {
            let prod = sc.product(one, j).unwrap();
            let expected: Vec<Int> = c
                .basis_at(e.degree)
                .iter()
                .map(|&t| if t == j { Int::one() } else { Int::zero() })
                .collect();
            assert_eq!(*prod, expected);
        }

        // v6 * v6 = -c2^2 v4
        let [v1p, v2p] = c.ring().v_polys();
        let v6sq = c.ring().normal_form(&v2p.mul(&v2p));
        let rhs = c
            .ring()
            .normal_form(&GradedPoly::c2().pow(2).mul(&v1p).scale(&crate::arith::rat(-1)));
        assert_eq!(v6sq, rhs);

        // v4 * v4 = d_1 v4 (the even-m square rule at m = 4)
        let v4sq = c.ring().normal_form(&v1p.mul(&v1p));
        let d1v4 = c.ring().normal_form(&c.classes().d(1).mul(&v1p));
        assert_eq!(v4sq, d1v4);

        // both land inside the lattice
        assert!(c.integral_coords(&v6sq).is_ok());
        assert!(c.integral_coords(&v4sq).is_ok());
    }

    #[test]
    fn associativity_small() {
        let c = ChowY::build(7).unwrap();
        let sc = c.verify_closure().unwrap();
        let k = c.rank();
        for i in 0..k {
            for j in i..k {
                for l in j..k {
                    assert!(c.associativity_holds(&sc, i, j, l), "({i}, {j}, {l})");
                }
            }
        }
    }

    #[test]
    fn c1_family_shapes() {
        let c = ChowY::build(8).unwrap();
        let sc = c.verify_closure().unwrap();
        let maps = c.c1_matrix_family(&sc);
        // degree 0: the coordinate column of c1 itself
        let m0 = &maps[&0];
        assert_eq!((m0.rows, m0.cols), (1, 1));
        assert_eq!(m0[(0, 0)], Int::one());
        // top degree maps nowhere
        assert!(!maps.contains_key(&c.top_degree()));
    }

    #[test]
    fn mod_p_dimensions_agree() {
        for n in [6u32, 7, 8, 9] {
            let c = ChowY::build(n).unwrap();
            for p in [2u32, 3, 5, 7] {
                let rep = c.mod_p_structure(p);
                assert!(rep.matches, "n={n}, p={p}: {:?}", rep);
            }
        }
    }
}
