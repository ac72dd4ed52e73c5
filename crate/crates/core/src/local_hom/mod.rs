//! Truncated `Hom(I, O/I)` for monomial ideals in `C[w1, w2, w3]`.
//!
//! The quotient is required to be finite in the `w1`, `w2` directions and is
//! cut off at `w3`-degree `d_max`. A homomorphism is determined by the images
//! of the generators; it is well defined exactly when every pairwise (Taylor)
//! syzygy `(lcm/g_i) phi(g_i) = (lcm/g_j) phi(g_j)` holds in the quotient.
//! The syzygies are evaluated in the quotient truncated at `d_max + G`, where
//! `G` is the largest `w3`-degree of any multiplier `lcm/g`, so no relation is
//! lost at the top of the window.

mod linalg;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use linalg::{Echelon, RationalMatrix};

/// Exponents of `w1^a w2^b w3^c`.
pub type Monomial = [u32; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalHomError {
    #[error("a monomial ideal needs at least one generator")]
    EmptyIdeal,
    #[error("the quotient is infinite in the {variable} direction (no pure power of {variable} among the generators)")]
    UnboundedQuotient { variable: &'static str },
    #[error("invalid ideal document: {0}")]
    Parse(String),
    #[error("at least one truncation degree is required")]
    EmptyRange,
    #[error("inconsistent quotient basis: {0}")]
    Internal(String),
}

pub fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

/// `a / b`, assuming `b` divides `a`.
fn monomial_div(a: &Monomial, b: &Monomial) -> Monomial {
    debug_assert!(divides(b, a));
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
    minimal: bool,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Result<Self, LocalHomError> {
        if gens.is_empty() {
            return Err(LocalHomError::EmptyIdeal);
        }
        let minimal = gens.iter().enumerate().all(|(i, a)| {
            gens.iter()
                .enumerate()
                .all(|(j, b)| i == j || !divides(a, b))
        });
        Ok(Self { gens, minimal })
    }

    /// `(w1, w2)`: a smooth curve through the origin.
    pub fn curve() -> Self {
        Self::new(vec![[1, 0, 0], [0, 1, 0]]).expect("nonempty")
    }

    /// `(w1, w2, w3)(w1, w2) = (w1^2, w1 w2, w2^2, w1 w3, w2 w3)`: the curve
    /// with a doubled embedded point.
    pub fn curve_with_embedded_point() -> Self {
        Self::new(vec![[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1]]).expect("nonempty")
    }

    /// `(w1, w2, w3)`: a reduced point.
    pub fn maximal() -> Self {
        Self::new(vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]).expect("nonempty")
    }

    /// Parses a JSON list of exponent triples, e.g. `[[1,0,0],[0,1,0]]`.
    pub fn from_json(text: &str) -> Result<Self, LocalHomError> {
        let gens: Vec<Monomial> = serde_json::from_str(text).map_err(|e| LocalHomError::Parse(e.to_string()))?;
        Self::new(gens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.gens).expect("exponents serialize")
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Drops generators divisible by another one (keeping the first of equal
    /// generators).
    pub fn minimalized(&self) -> Self {
        let mut kept: Vec<Monomial> = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            let redundant = self.gens.iter().enumerate().any(|(j, h)| {
                j != i && divides(h, g) && (h != g || j < i)
            });
            if !redundant {
                kept.push(*g);
            }
        }
        Self::new(kept).expect("a nonempty ideal keeps a generator")
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    /// Exchanges `w1` and `w2` in every generator.
    pub fn swap_w1_w2(&self) -> Self {
        Self::new(self.gens.iter().map(|g| [g[1], g[0], g[2]]).collect()).expect("nonempty")
    }

    fn pure_power(&self, var: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| (0..3).all(|v| v == var || g[v] == 0))
            .map(|g| g[var])
            .min()
    }
}

/// Standard monomials of an ideal with `w3`-degree at most `d_max`.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    ideal: MonomialIdeal,
    d_max: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl TruncatedQuotient {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn standard_monomials(ideal: &MonomialIdeal, d_max: u32) -> Result<TruncatedQuotient, LocalHomError> {
    let a = ideal
        .pure_power(0)
        .ok_or(LocalHomError::UnboundedQuotient { variable: "w1" })?;
    let b = ideal
        .pure_power(1)
        .ok_or(LocalHomError::UnboundedQuotient { variable: "w2" })?;
    let mut basis = Vec::new();
    for c in 0..=d_max {
        for e1 in 0..a {
            for e2 in 0..b {
                let m = [e1, e2, c];
                if !ideal.contains(&m) {
                    basis.push(m);
                }
            }
        }
    }
    basis.sort_by_key(|m| (m[0] + m[1] + m[2], *m));
    let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    Ok(TruncatedQuotient {
        ideal: ideal.clone(),
        d_max,
        basis,
        index,
    })
}

/// A pairwise syzygy between generators `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyPair {
    pub first: usize,
    pub second: usize,
    pub lcm: Monomial,
}

impl SyzygyPair {
    /// `(lcm / g_first, lcm / g_second)`.
    pub fn multipliers(&self, ideal: &MonomialIdeal) -> (Monomial, Monomial) {
        let gens = ideal.gens();
        (
            monomial_div(&self.lcm, &gens[self.first]),
            monomial_div(&self.lcm, &gens[self.second]),
        )
    }
}

pub fn syzygy_pairs(ideal: &MonomialIdeal) -> Vec<SyzygyPair> {
    let gens = ideal.gens();
    let mut out = Vec::new();
    for first in 0..gens.len() {
        for second in first + 1..gens.len() {
            out.push(SyzygyPair {
                first,
                second,
                lcm: monomial_lcm(&gens[first], &gens[second]),
            });
        }
    }
    out
}

/// A basis of the truncated `Hom(I, O/I)`.
#[derive(Clone, Debug)]
pub struct HomSolution {
    pub ideal: MonomialIdeal,
    pub d_max: u32,
    pub quotient_basis: Vec<Monomial>,
    pub unknowns: usize,
    pub rank: usize,
    pub dimension: usize,
    /// `basis_maps[v][g][b]`: coefficient of `quotient_basis[b]` in the image
    /// of generator `g` under the `v`-th basis homomorphism.
    pub basis_maps: Vec<Vec<Vec<BigRational>>>,
}

pub fn hom_dimension(ideal: &MonomialIdeal, d_max: u32) -> Result<HomSolution, LocalHomError> {
    let quotient = standard_monomials(ideal, d_max)?;
    let pairs = syzygy_pairs(ideal);
    let guard = pairs
        .iter()
        .flat_map(|p| {
            let (a, b) = p.multipliers(ideal);
            [a[2], b[2]]
        })
        .max()
        .unwrap_or(0);
    let wide = standard_monomials(ideal, d_max + guard)?;

    let n_gens = ideal.gens().len();
    let n_basis = quotient.len();
    let unknowns = n_gens * n_basis;

    // Row per (pair, standard monomial of the wide quotient) that is hit.
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (p, pair) in pairs.iter().enumerate() {
        let (left, right) = pair.multipliers(ideal);
        for (gen, multiplier, sign) in [(pair.first, left, 1), (pair.second, right, -1)] {
            for (b, basis_mono) in quotient.basis().iter().enumerate() {
                let product = monomial_mul(&multiplier, basis_mono);
                if ideal.contains(&product) {
                    continue;
                }
                let target = wide.index_of(&product).ok_or_else(|| {
                    LocalHomError::Internal(format!("{product:?} is standard but outside the evaluation window"))
                })?;
                let entry = rows
                    .entry((p, target))
                    .or_default()
                    .entry(gen * n_basis + b)
                    .or_default();
                *entry += sign;
            }
        }
    }

    let mut matrix = RationalMatrix::zeros(rows.len(), unknowns);
    for (r, entries) in rows.values().enumerate() {
        for (&c, v) in entries {
            matrix.set(r, c, BigRational::from_integer(v.clone()));
        }
    }
    let echelon = matrix.rref();
    let rank = echelon.rank();
    let basis_maps: Vec<Vec<Vec<BigRational>>> = echelon
        .nullspace()
        .into_iter()
        .map(|v| v.chunks(n_basis).map(<[BigRational]>::to_vec).collect())
        .collect();

    let solution = HomSolution {
        ideal: ideal.clone(),
        d_max,
        quotient_basis: quotient.basis().to_vec(),
        unknowns,
        rank,
        dimension: basis_maps.len(),
        basis_maps,
    };
    if let Some(v) = solution.first_violation() {
        return Err(LocalHomError::Internal(format!("basis map {v} violates a syzygy")));
    }
    Ok(solution)
}

impl HomSolution {
    /// Images of generator `g` under basis map `v`, as a sparse polynomial.
    fn image(&self, v: usize, g: usize) -> BTreeMap<Monomial, BigRational> {
        self.basis_maps[v][g]
            .iter()
            .zip(&self.quotient_basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (*m, c.clone()))
            .collect()
    }

    /// Re-checks every syzygy for every basis map by direct multiplication
    /// in `C[w1, w2, w3] / I`; returns the first failing map.
    pub fn first_violation(&self) -> Option<usize> {
        let pairs = syzygy_pairs(&self.ideal);
        (0..self.basis_maps.len()).find(|&v| {
            pairs.iter().any(|pair| {
                let (left, right) = pair.multipliers(&self.ideal);
                let mut diff: BTreeMap<Monomial, BigRational> = BTreeMap::new();
                for (gen, multiplier, sign) in [(pair.first, left, 1), (pair.second, right, -1)] {
                    for (m, c) in self.image(v, gen) {
                        let product = monomial_mul(&multiplier, &m);
                        if !self.ideal.contains(&product) {
                            *diff.entry(product).or_insert_with(BigRational::zero) +=
                                c * BigRational::from_integer(sign.into());
                        }
                    }
                }
                diff.values().any(|c| !c.is_zero())
            })
        })
    }

    /// Rank of the basis maps viewed as vectors of length `unknowns`.
    pub fn basis_rank(&self) -> usize {
        let rows = self
            .basis_maps
            .iter()
            .map(|per_gen| per_gen.iter().flatten().cloned().collect())
            .collect();
        RationalMatrix::from_rows(rows, self.unknowns).rank()
    }
}

/// Dimensions for one truncation degree `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentJumpRow {
    pub d: u32,
    /// `(w1, w2)`.
    pub curve_dim: usize,
    pub curve_rank: usize,
    pub curve_unknowns: usize,
    /// `(w1^2, w1 w2, w2^2, w1 w3, w2 w3)`.
    pub point_dim: usize,
    pub point_rank: usize,
    pub point_unknowns: usize,
    pub expected_curve_dim: usize,
    pub expected_point_dim: usize,
    /// `point_dim - curve_dim` at the same truncation.
    pub local_difference: i64,
    /// The embedded-point maps send `w1 w3`, `w2 w3` to series starting at
    /// `w3^1`; on the punctured neighbourhood they become the curve's series
    /// in `w1`, `w2` starting at `w3^0`. Matching the two families compares
    /// `point_dim` at `D + 1` with `curve_dim` at `D`.
    pub reindexed_jump: i64,
    /// `reindexed_jump - local_difference`.
    pub series_index_offset: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentJumpReport {
    pub rows: Vec<TangentJumpRow>,
    pub global_jump: i64,
    pub pass: bool,
}

/// Number of `b_{ij}` parameters: images of the five generators in the span
/// of `w1`, `w2`.
pub const TANGENT_JUMP: i64 = 10;

pub fn verify_tangent_jump(d_range: &[u32]) -> Result<TangentJumpReport, LocalHomError> {
    if d_range.is_empty() {
        return Err(LocalHomError::EmptyRange);
    }
    let curve = MonomialIdeal::curve();
    let point = MonomialIdeal::curve_with_embedded_point();
    let mut rows = Vec::with_capacity(d_range.len());
    for &d in d_range {
        let c = hom_dimension(&curve, d)?;
        let p = hom_dimension(&point, d)?;
        let p_next = hom_dimension(&point, d + 1)?;
        let expected_curve_dim = 2 * d as usize + 2;
        let expected_point_dim = 10 + 2 * d as usize;
        let local_difference = p.dimension as i64 - c.dimension as i64;
        let reindexed_jump = p_next.dimension as i64 - c.dimension as i64;
        let pass = c.dimension == expected_curve_dim
            && p.dimension == expected_point_dim
            && c.rank + c.dimension == c.unknowns
            && p.rank + p.dimension == p.unknowns
            && reindexed_jump == TANGENT_JUMP;
        rows.push(TangentJumpRow {
            d,
            curve_dim: c.dimension,
            curve_rank: c.rank,
            curve_unknowns: c.unknowns,
            point_dim: p.dimension,
            point_rank: p.rank,
            point_unknowns: p.unknowns,
            expected_curve_dim,
            expected_point_dim,
            local_difference,
            reindexed_jump,
            series_index_offset: reindexed_jump - local_difference,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TangentJumpReport {
        rows,
        global_jump: TANGENT_JUMP,
        pass,
    })
}
