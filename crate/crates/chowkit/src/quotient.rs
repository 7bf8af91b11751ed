//! The rational ring of `Y_n`, built from its presentation:
//!
//! - `n = 2m`:   `Q[c1, c2, chi] / (c2 chi, chi^2 - d_{m-2}, d_{m-1})`
//! - `n = 2m+1`: `Q[c1, c2] / (d_{m-1}, c2^2 d_{m-2})`
//!
//! Per degree, the span of all relation multiples is row-reduced against the
//! raw monomials, with the canonical module-structure monomials
//!
//! - `n = 2m+1`: `c1^a c2^b`, `a < 2(m-1-floor(b/2))`, `floor(b/2) <= m-2`
//! - `n = 2m`:   the same with `ceil(b/2)` for `b >= 1`, plus `c1^a chi`,
//!               `a < 2(m-1)`
//!
//! kept as the free columns. The construction fails loudly if a pivot ever
//! lands on a canonical monomial, so a successful build certifies that the
//! canonical monomials are a basis in every degree. Every element of the
//! ring is stored as its coordinate vector in these bases.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{GradedPoly, Mono, Rat};
use crate::classes::ClassTable;
use crate::linalg::{rank_mod_p, RatMat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("n = {0} is below the supported range (n >= 6)")]
    RankTooSmall(u32),
}

/// One graded piece: the canonical monomial basis and the reduction of every
/// raw monomial of this degree into it.
#[derive(Debug)]
struct DegreeData {
    basis: Vec<Mono>,
    reduce: BTreeMap<Mono, Vec<Rat>>,
}

#[derive(Debug)]
pub struct QuotientRing {
    n: u32,
    m: u32,
    even: bool,
    top_degree: u32,
    data_degree: u32,
    degrees: BTreeMap<u32, DegreeData>,
}

/// Element in canonical coordinates, stored per degree; inhomogeneous
/// elements are degree-indexed families. Zero vectors are pruned.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElem {
    coords: BTreeMap<u32, Vec<Rat>>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub(crate) fn from_parts(parts: BTreeMap<u32, Vec<Rat>>) -> Self {
        let coords = parts
            .into_iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .collect();
        RingElem { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn part(&self, degree: u32) -> Option<&Vec<Rat>> {
        self.coords.get(&degree)
    }

    pub fn parts(&self) -> impl Iterator<Item = (u32, &Vec<Rat>)> {
        self.coords.iter().map(|(d, v)| (*d, v))
    }

    /// Degree and coordinates when the element is concentrated in one degree.
    pub fn single(&self) -> Option<(u32, &Vec<Rat>)> {
        if self.coords.len() == 1 {
            self.coords.iter().next().map(|(d, v)| (*d, v))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        for (d, v) in &other.coords {
            match coords.get_mut(d) {
                None => {
                    coords.insert(*d, v.clone());
                }
                Some(w) => {
                    for (a, b) in w.iter_mut().zip(v) {
                        *a += b;
                    }
                }
            }
        }
        RingElem::from_parts(coords)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return RingElem::zero();
        }
        RingElem {
            coords: self
                .coords
                .iter()
                .map(|(d, v)| (*d, v.iter().map(|c| c * s).collect()))
                .collect(),
        }
    }
}

impl QuotientRing {
    /// Builds the ring for `n >= 6`, with reduction data up to twice the top
    /// nonzero degree so that products of ring elements always reduce.
    pub fn build(n: u32) -> Result<QuotientRing, QuotientError> {
        Self::build_up_to(n, None)
    }

    /// Builds reduction data only up to `limit` (clamped to the top degree);
    /// products cannot be reduced in a truncated ring, but dimension scans
    /// over wide ranges of `n` stay cheap.
    pub fn build_truncated(n: u32, limit: u32) -> Result<QuotientRing, QuotientError> {
        Self::build_up_to(n, Some(limit))
    }

    fn build_up_to(n: u32, limit: Option<u32>) -> Result<QuotientRing, QuotientError> {
        if n < 6 {
            return Err(QuotientError::RankTooSmall(n));
        }
        let even = n % 2 == 0;
        let m = if even { n / 2 } else { (n - 1) / 2 };
        let top_degree = 4 * n - 14;
        let data_degree = match limit {
            Some(l) => l.min(top_degree),
            None => 2 * top_degree,
        };

        let classes = ClassTable::new();
        let relations: Vec<GradedPoly> = if even {
            vec![
                classes.d(m - 1).with_ctx(m),
                GradedPoly::c2().mul(&GradedPoly::chi(m)),
            ]
        } else {
            vec![classes.d(m - 1), GradedPoly::c2().pow(2).mul(&classes.d(m - 2))]
        };

        let mut ring = QuotientRing {
            n,
            m,
            even,
            top_degree,
            data_degree,
            degrees: BTreeMap::new(),
        };

        let mut total_rank = 0usize;
        for deg in (0..=data_degree).step_by(2) {
            let data = ring.build_degree(deg, &relations);
            if deg <= top_degree {
                total_rank += data.basis.len();
            } else {
                assert!(
                    data.basis.is_empty(),
                    "nonzero piece above the top degree at {deg} (n = {n})"
                );
            }
            ring.degrees.insert(deg, data);
        }
        if data_degree >= top_degree {
            let expected = 2 * (m as usize) * (m as usize - 1);
            assert_eq!(
                total_rank, expected,
                "total rank {total_rank} differs from the module count {expected} (n = {n})"
            );
        }
        Ok(ring)
    }

    fn build_degree(&self, deg: u32, relations: &[GradedPoly]) -> DegreeData {
        let raw = self.raw_monomials(deg);
        let canon = self.canonical_monomials(deg);
        debug_assert!(canon.iter().all(|c| raw.contains(c)));

        // Columns: non-canonical monomials first, canonical last, so pivots
        // can only avoid the canonical block if it is independent mod the
        // ideal.
        let non_canon: Vec<Mono> = raw.iter().filter(|m| !canon.contains(m)).copied().collect();
        let columns: Vec<Mono> = non_canon.iter().chain(canon.iter()).copied().collect();
        let col_index: BTreeMap<Mono, usize> =
            columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();

        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for rel in relations {
            let rel_deg = rel
                .homogeneous_degree()
                .expect("relations are homogeneous");
            if rel_deg > deg {
                continue;
            }
            for mult in self.raw_monomials(deg - rel_deg) {
                let prod = GradedPoly::monomial(mult, Rat::one())
                    .with_ctx_opt(self.even.then_some(self.m))
                    .mul(rel);
                let mut row = vec![Rat::zero(); columns.len()];
                for (mono, c) in prod.terms() {
                    row[col_index[mono]] = c.clone();
                }
                rows.push(row);
            }
        }

        let reduce = if rows.is_empty() {
            // no relations reach this degree: everything is canonical
            assert_eq!(
                non_canon.len(),
                0,
                "degree {deg}: unreduced monomials without relations (n = {})",
                self.n
            );
            raw.iter()
                .map(|m| {
                    let mut v = vec![Rat::zero(); canon.len()];
                    v[canon.iter().position(|c| c == m).unwrap()] = Rat::one();
                    (*m, v)
                })
                .collect()
        } else {
            let mut mat = RatMat::from_rows(&rows);
            let pivots = mat.rref();
            assert_eq!(
                pivots.len(),
                non_canon.len(),
                "degree {deg}: relation rank {} does not complement the {} canonical monomials \
                 among {} raw ones (n = {})",
                pivots.len(),
                canon.len(),
                raw.len(),
                self.n
            );
            assert!(
                pivots.iter().all(|&p| p < non_canon.len()),
                "degree {deg}: a pivot landed on a canonical monomial (n = {})",
                self.n
            );
            let mut reduce: BTreeMap<Mono, Vec<Rat>> = BTreeMap::new();
            for (i, mono) in canon.iter().enumerate() {
                let mut v = vec![Rat::zero(); canon.len()];
                v[i] = Rat::one();
                reduce.insert(*mono, v);
            }
            for (r, &p) in pivots.iter().enumerate() {
                let mono = columns[p];
                let v: Vec<Rat> = (0..canon.len())
                    .map(|i| -mat[(r, non_canon.len() + i)].clone())
                    .collect();
                reduce.insert(mono, v);
            }
            reduce
        };

        DegreeData { basis: canon, reduce }
    }

    /// All monomials of the ambient polynomial ring in the given degree.
    fn raw_monomials(&self, deg: u32) -> Vec<Mono> {
        ambient_monomials(deg, self.even.then_some(self.m))
    }

    /// The canonical module-structure monomials in the given degree.
    fn canonical_monomials(&self, deg: u32) -> Vec<Mono> {
        let m = self.m;
        let mut out = Vec::new();
        for b in 0..=deg / 4 {
            if 2 * ((deg - 4 * b) / 2) + 4 * b != deg {
                continue;
            }
            let a = (deg - 4 * b) / 2;
            let i = if self.even { (b + 1) / 2 } else { b / 2 };
            if i > m - 2 {
                continue;
            }
            if a <= 2 * (m - 1 - i) - 1 {
                out.push(Mono::new(a, b));
            }
        }
        if self.even {
            let chi_deg = 2 * m - 4;
            if deg >= chi_deg && (deg - chi_deg) % 2 == 0 {
                let a = (deg - chi_deg) / 2;
                if a <= 2 * m - 3 {
                    out.push(Mono::with_chi(a, 0));
                }
            }
        }
        out.sort();
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Canonical basis monomials of one degree (empty above the top degree).
    pub fn basis(&self, degree: u32) -> &[Mono] {
        self.degrees
            .get(&degree)
            .map(|d| d.basis.as_slice())
            .unwrap_or(&[])
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis(degree).len()
    }

    /// Per-degree dimensions up to the top degree.
    pub fn dims(&self) -> BTreeMap<u32, usize> {
        (0..=self.top_degree)
            .step_by(2)
            .map(|d| (d, self.dim(d)))
            .filter(|(_, k)| *k > 0)
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().values().sum()
    }

    /// Canonical coordinates of an arbitrary polynomial. Pieces above the
    /// top degree vanish in the ring and are dropped.
    pub fn normal_form(&self, p: &GradedPoly) -> RingElem {
        if let Some(ctx) = p.ctx() {
            assert!(
                !p.has_chi() || (self.even && ctx == self.m),
                "chi context {ctx} does not match the ring (n = {})",
                self.n
            );
        }
        let mut parts = BTreeMap::new();
        for (deg, part) in p.homogeneous_parts() {
            if deg > self.top_degree {
                debug_assert!(deg <= self.data_degree || deg > 2 * self.top_degree);
                continue;
            }
            let data = &self.degrees[&deg];
            let mut v = vec![Rat::zero(); data.basis.len()];
            for (mono, c) in part.terms() {
                let red = data
                    .reduce
                    .get(mono)
                    .unwrap_or_else(|| panic!("no reduction for {mono:?} in degree {deg}"));
                for (a, r) in v.iter_mut().zip(red) {
                    *a += c * r;
                }
            }
            parts.insert(deg, v);
        }
        RingElem::from_parts(parts)
    }

    /// The canonical polynomial representative of an element.
    pub fn lift(&self, e: &RingElem) -> GradedPoly {
        let mut p = GradedPoly::zero();
        if self.even {
            p = p.with_ctx_opt(Some(self.m));
        }
        for (deg, v) in e.parts() {
            for (mono, c) in self.basis(deg).iter().zip(v) {
                p.add_term(*mono, c.clone());
            }
        }
        p
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.normal_form(&self.lift(a).mul(&self.lift(b)))
    }

    /// The raw polynomials of the two half-integral classes, ordered by
    /// degree:
    ///
    /// - `n = 2m`:   `v_{2m-4} = (chi - b_{m-2})/2`, `v_{2m-2} = b_{m-1}/2`
    /// - `n = 2m+1`: `v_{2m-2} = b_{m-1}/2`,         `v_{2m} = c2 b_{m-2}/2`
    pub fn v_polys(&self) -> [GradedPoly; 2] {
        let classes = ClassTable::new();
        let m = self.m;
        let half = crate::arith::ratio(1, 2);
        if self.even {
            let v1 = GradedPoly::chi(m).sub(&classes.b(m - 2)).scale(&half);
            let v2 = classes.b(m - 1).scale(&half);
            [v1, v2]
        } else {
            let v1 = classes.b(m - 1).scale(&half);
            let v2 = GradedPoly::c2().mul(&classes.b(m - 2)).scale(&half);
            [v1, v2]
        }
    }

    /// Degrees of the two `v`-classes, matching [`v_polys`](Self::v_polys).
    pub fn v_degrees(&self) -> [u32; 2] {
        let m = self.m;
        if self.even {
            [2 * m - 4, 2 * m - 2]
        } else {
            [2 * m - 2, 2 * m]
        }
    }

    /// The `v`-classes as ring elements, with their degrees.
    pub fn v_classes(&self) -> Vec<(u32, RingElem)> {
        self.v_polys()
            .iter()
            .zip(self.v_degrees())
            .map(|(p, d)| (d, self.normal_form(p)))
            .collect()
    }
}

/// All ambient monomials of one degree: `c1^a c2^b`, plus `c1^a c2^b chi`
/// when an even context `m` is given.
fn ambient_monomials(deg: u32, chi_ctx: Option<u32>) -> Vec<Mono> {
    let mut out = Vec::new();
    for b in 0..=deg / 4 {
        out.push(Mono::new((deg - 4 * b) / 2, b));
    }
    if let Some(m) = chi_ctx {
        let chi_deg = 2 * m - 4;
        if deg >= chi_deg {
            let rem = deg - chi_deg;
            for b in 0..=rem / 4 {
                out.push(Mono::with_chi((rem - 4 * b) / 2, b));
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Mod-p dimension counts from the module presentations
// ---------------------------------------------------------------------------

/// Per-degree dimensions of a graded quotient of the polynomial ring by the
/// given homogeneous relations, computed over `Z/p` by row reduction of all
/// relation multiples.
fn quotient_dims_mod_p(
    relations: &[GradedPoly],
    even_ctx: Option<u32>,
    p: u32,
    max_degree: u32,
) -> BTreeMap<u32, usize> {
    use num_integer::Integer as _;
    use num_traits::ToPrimitive;

    let modulus = crate::arith::int(p as i64);
    let mut dims = BTreeMap::new();
    for deg in (0..=max_degree).step_by(2) {
        let raw = ambient_monomials(deg, even_ctx);
        let col_index: BTreeMap<Mono, usize> =
            raw.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for rel in relations {
            let rel_deg = rel.homogeneous_degree().unwrap();
            if rel_deg > deg {
                continue;
            }
            for mult in ambient_monomials(deg - rel_deg, even_ctx) {
                let prod = GradedPoly::monomial(mult, Rat::one())
                    .with_ctx_opt(even_ctx)
                    .mul(rel);
                let mut row = vec![0i64; raw.len()];
                for (mono, c) in prod.terms() {
                    assert!(c.denom().is_one());
                    row[col_index[mono]] = c.numer().mod_floor(&modulus).to_i64().unwrap();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() { 0 } else { rank_mod_p(&rows, p as i64) };
        let dim = raw.len() - rank;
        if dim > 0 {
            dims.insert(deg, dim);
        }
    }
    dims
}

/// Expected per-degree dimensions of `CH(Y_n) (x) Z/p` from the module
/// presentations, expanded symbolically over `Z/p`:
///
/// - `p = 2`: `Z/2[c1,c2]/(b_{m-1}, c2 b_{m-2})` tensored with the exterior
///   algebra on the two `v`-classes;
/// - odd `p`: the same presentations the rational ring is built from.
pub fn mod_p_module_dims(n: u32, p: u32, max_degree: u32) -> BTreeMap<u32, usize> {
    let even = n % 2 == 0;
    let m = if even { n / 2 } else { (n - 1) / 2 };
    let classes = ClassTable::new();
    if p == 2 {
        let relations = vec![classes.b(m - 1), GradedPoly::c2().mul(&classes.b(m - 2))];
        let base = quotient_dims_mod_p(&relations, None, 2, max_degree);
        let shifts: [u32; 2] = if even {
            [2 * m - 4, 2 * m - 2]
        } else {
            [2 * m - 2, 2 * m]
        };
        let mut dims: BTreeMap<u32, usize> = BTreeMap::new();
        for shift in [0, shifts[0], shifts[1], shifts[0] + shifts[1]] {
            for (&d, &k) in &base {
                if d + shift <= max_degree {
                    *dims.entry(d + shift).or_default() += k;
                }
            }
        }
        dims
    } else {
        let relations: Vec<GradedPoly> = if even {
            vec![
                classes.d(m - 1).with_ctx(m),
                GradedPoly::c2().mul(&GradedPoly::chi(m)),
            ]
        } else {
            vec![classes.d(m - 1), GradedPoly::c2().pow(2).mul(&classes.d(m - 2))]
        };
        quotient_dims_mod_p(&relations, even.then_some(m), p, max_degree)
    }
}
