//! Hodge diamonds of curves and surfaces, and the 3-folds fibered over a
//! surface by curves of fixed genus.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::BivariatePolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("hodge diamond violates `{invariant}`: {detail}")]
    InvariantViolated {
        invariant: &'static str,
        detail: String,
    },
    #[error("unknown variety `{0}` (expected point, curve(g), p2, p1xp1, k3 or abelian)")]
    UnknownName(String),
    #[error("expected a surface, got a diamond of dimension {0}")]
    NotASurface(usize),
    #[error("invalid diamond document: {0}")]
    Parse(String),
}

/// The grid `h^{i,j}`, `0 <= i, j <= dim`, of a smooth projective variety.
///
/// Construction through [`HodgeDiamond::new`] enforces the shape, the
/// normalization `h^{0,0} = 1`, conjugation symmetry and Serre duality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiamond", into = "RawDiamond")]
pub struct HodgeDiamond {
    dim: usize,
    h: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawDiamond {
    dim: usize,
    h: Vec<Vec<u64>>,
}

impl TryFrom<RawDiamond> for HodgeDiamond {
    type Error = GeometryError;

    fn try_from(raw: RawDiamond) -> Result<Self, Self::Error> {
        HodgeDiamond::new(raw.dim, raw.h)
    }
}

impl From<HodgeDiamond> for RawDiamond {
    fn from(d: HodgeDiamond) -> Self {
        RawDiamond { dim: d.dim, h: d.h }
    }
}

impl HodgeDiamond {
    pub fn new(dim: usize, h: Vec<Vec<u64>>) -> Result<Self, GeometryError> {
        let d = Self { dim, h };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let n = self.dim + 1;
        if self.h.len() != n || self.h.iter().any(|row| row.len() != n) {
            return Err(GeometryError::InvariantViolated {
                invariant: "shape",
                detail: format!("expected a {n}x{n} grid for dimension {}", self.dim),
            });
        }
        if self.h[0][0] != 1 {
            return Err(GeometryError::InvariantViolated {
                invariant: "h00_is_one",
                detail: format!("h^{{0,0}} = {}", self.h[0][0]),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if self.h[i][j] != self.h[j][i] {
                    return Err(GeometryError::InvariantViolated {
                        invariant: "conjugation_symmetry",
                        detail: format!("h^{{{i},{j}}} = {} but h^{{{j},{i}}} = {}", self.h[i][j], self.h[j][i]),
                    });
                }
                let (di, dj) = (self.dim - i, self.dim - j);
                if self.h[i][j] != self.h[di][dj] {
                    return Err(GeometryError::InvariantViolated {
                        invariant: "serre_duality",
                        detail: format!(
                            "h^{{{i},{j}}} = {} but h^{{{di},{dj}}} = {}",
                            self.h[i][j], self.h[di][dj]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Parses and validates `{"dim": d, "h": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let raw: RawDiamond = serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diamond serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self, i: usize, j: usize) -> u64 {
        self.h[i][j]
    }

    /// Signed Hodge number `e^{i,j} = (-1)^(i+j) h^{i,j}`.
    pub fn signed(&self, i: usize, j: usize) -> i64 {
        let h = self.h[i][j] as i64;
        if (i + j).is_multiple_of(2) {
            h
        } else {
            -h
        }
    }

    pub fn ensure_surface(&self) -> Result<(), GeometryError> {
        if self.dim != 2 {
            return Err(GeometryError::NotASurface(self.dim));
        }
        Ok(())
    }

    pub fn point() -> Self {
        Self { dim: 0, h: vec![vec![1]] }
    }

    pub fn curve(genus: u64) -> Self {
        Self {
            dim: 1,
            h: vec![vec![1, genus], vec![genus, 1]],
        }
    }

    pub fn projective_plane() -> Self {
        Self::surface(0, 0, 1)
    }

    pub fn p1_times_p1() -> Self {
        Self::surface(0, 0, 2)
    }

    pub fn k3() -> Self {
        Self::surface(0, 1, 20)
    }

    pub fn abelian_surface() -> Self {
        Self::surface(2, 1, 4)
    }

    /// A formal surface diamond with Euler number `chi`. It need not come
    /// from an actual surface; the Euler-level formulas only see `chi`.
    pub fn formal_surface_with_euler(chi: i64) -> Self {
        if chi >= 2 {
            return Self::surface(0, 0, (chi - 2) as u64);
        }
        let q = (2 - chi + 3) / 4;
        Self::surface(q as u64, 0, (chi - 2 + 4 * q) as u64)
    }

    /// Surface diamond from irregularity `h^{1,0}`, geometric genus `h^{2,0}`
    /// and `h^{1,1}`.
    fn surface(q: u64, pg: u64, h11: u64) -> Self {
        Self {
            dim: 2,
            h: vec![vec![1, q, pg], vec![q, h11, q], vec![pg, q, 1]],
        }
    }
}

/// `e(v; s, t) = sum (-1)^(i+j) h^{i,j} s^i t^j`.
pub fn e_polynomial(v: &HodgeDiamond) -> BivariatePolynomial {
    let n = v.dim + 1;
    let mut p = BivariatePolynomial::zero();
    for i in 0..n {
        for j in 0..n {
            p.add_term((i as u32, j as u32), BigInt::from(v.signed(i, j)));
        }
    }
    p
}

/// Topological Euler number, the `s = t = 1` value of [`e_polynomial`].
pub fn euler_number(v: &HodgeDiamond) -> BigInt {
    e_polynomial(v).eval_one()
}

/// A Zariski-locally trivial fibration `X -> S` by genus-`g` curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationSpec {
    base: HodgeDiamond,
    fiber_genus: u64,
    beta_dot_kx: i64,
    trivial_canonical_base: bool,
}

impl FibrationSpec {
    /// A fibration over a custom surface. The canonical class of the base is
    /// treated as nontrivial.
    pub fn new(base: HodgeDiamond, fiber_genus: u64) -> Result<Self, GeometryError> {
        base.ensure_surface()?;
        Ok(Self {
            base,
            fiber_genus,
            beta_dot_kx: 0,
            trivial_canonical_base: false,
        })
    }

    /// A fibration over a registry surface, inheriting its `K_S = 0` flag.
    pub fn over_registry(base: &RegistryEntry, fiber_genus: u64) -> Result<Self, GeometryError> {
        let mut spec = Self::new(base.diamond.clone(), fiber_genus)?;
        spec.trivial_canonical_base = base.trivial_canonical;
        Ok(spec)
    }

    pub fn with_beta_dot_kx(mut self, beta_dot_kx: i64) -> Self {
        self.beta_dot_kx = beta_dot_kx;
        self
    }

    pub fn base(&self) -> &HodgeDiamond {
        &self.base
    }

    pub fn fiber_genus(&self) -> u64 {
        self.fiber_genus
    }

    pub fn fiber(&self) -> HodgeDiamond {
        HodgeDiamond::curve(self.fiber_genus)
    }

    pub fn beta_dot_kx(&self) -> i64 {
        self.beta_dot_kx
    }

    pub fn has_trivial_canonical_base(&self) -> bool {
        self.trivial_canonical_base
    }
}

/// `e(X) = e(C_g) e(S)` by multiplicativity over a locally trivial fibration.
pub fn fibration_e_polynomial(x: &FibrationSpec) -> BivariatePolynomial {
    &e_polynomial(&x.fiber()) * &e_polynomial(&x.base)
}

/// Virtual dimension `-beta.K_X` of the ideal-sheaf moduli space.
pub fn virtual_dimension(x: &FibrationSpec) -> i64 {
    -x.beta_dot_kx
}

/// A named diamond from the built-in registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub name: String,
    pub diamond: HodgeDiamond,
    /// `K_S = 0` holds literally (not merely numerically).
    pub trivial_canonical: bool,
}

/// Names of the registry surfaces.
pub const REGISTRY_SURFACES: [&str; 4] = ["p2", "p1xp1", "k3", "abelian"];

/// Looks up `point`, `curve(g)`, `p2`, `p1xp1`, `k3` or `abelian`.
pub fn registry_lookup(name: &str) -> Result<RegistryEntry, GeometryError> {
    let key = name.trim().to_ascii_lowercase();
    let (diamond, trivial_canonical) = match key.as_str() {
        "point" => (HodgeDiamond::point(), false),
        "p2" => (HodgeDiamond::projective_plane(), false),
        "p1xp1" => (HodgeDiamond::p1_times_p1(), false),
        "k3" => (HodgeDiamond::k3(), true),
        "abelian" => (HodgeDiamond::abelian_surface(), true),
        other => {
            let genus = other
                .strip_prefix("curve(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|g| g.trim().parse::<u64>().ok())
                .ok_or_else(|| GeometryError::UnknownName(name.to_string()))?;
            (HodgeDiamond::curve(genus), genus == 1)
        }
    };
    debug_assert!(diamond.validate().is_ok());
    Ok(RegistryEntry {
        name: key,
        diamond,
        trivial_canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(terms.iter().copied())
    }

    fn k3_poly() -> BivariatePolynomial {
        poly(&[(0, 0, 1), (2, 0, 1), (0, 2, 1), (1, 1, 20), (2, 2, 1)])
    }

    fn elliptic_poly() -> BivariatePolynomial {
        poly(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)])
    }

    #[test]
    fn e_polynomial_examples() {
        assert_eq!(e_polynomial(&HodgeDiamond::curve(1)), elliptic_poly());
        assert_eq!(e_polynomial(&HodgeDiamond::k3()), k3_poly());
        assert_eq!(e_polynomial(&HodgeDiamond::point()), BivariatePolynomial::one());
    }

    #[test]
    fn euler_number_examples() {
        assert_eq!(euler_number(&HodgeDiamond::projective_plane()), BigInt::from(3));
        assert_eq!(euler_number(&HodgeDiamond::abelian_surface()), BigInt::from(0));
        assert_eq!(euler_number(&HodgeDiamond::k3()), BigInt::from(24));
    }

    #[test]
    fn fibration_examples() {
        let k3 = registry_lookup("k3").unwrap();
        let x = FibrationSpec::over_registry(&k3, 1).unwrap();
        assert_eq!(fibration_e_polynomial(&x), &elliptic_poly() * &k3_poly());

        let p2 = registry_lookup("p2").unwrap();
        let rational = FibrationSpec::over_registry(&p2, 0).unwrap();
        let one_plus_st = poly(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(
            fibration_e_polynomial(&rational),
            &one_plus_st * &e_polynomial(&p2.diamond)
        );

        let ab = registry_lookup("abelian").unwrap();
        let x = FibrationSpec::over_registry(&ab, 1).unwrap();
        assert_eq!(fibration_e_polynomial(&x).eval_one(), BigInt::from(0));
    }

    #[test]
    fn virtual_dimension_sign() {
        let base = HodgeDiamond::k3();
        let x = FibrationSpec::new(base, 1).unwrap();
        assert_eq!(virtual_dimension(&x), 0);
        assert_eq!(virtual_dimension(&x.clone().with_beta_dot_kx(5)), -5);
        assert_eq!(virtual_dimension(&x.with_beta_dot_kx(-2)), 2);
    }

    #[test]
    fn registry_examples() {
        let c0 = registry_lookup("curve(0)").unwrap().diamond;
        assert_eq!((c0.h(0, 0), c0.h(1, 1), c0.h(1, 0), c0.h(0, 1)), (1, 1, 0, 0));
        assert_eq!(euler_number(&registry_lookup("p1xp1").unwrap().diamond), BigInt::from(4));
        let k3 = registry_lookup("K3").unwrap();
        assert_eq!((k3.diamond.h(1, 1), k3.diamond.h(2, 0)), (20, 1));
        assert!(k3.trivial_canonical);
        assert!(registry_lookup("abelian").unwrap().trivial_canonical);
        assert!(!registry_lookup("p2").unwrap().trivial_canonical);
        assert_eq!(registry_lookup("curve(7)").unwrap().diamond.h(1, 0), 7);
    }

    #[test]
    fn unknown_names_are_rejected() {
        for bad in ["bad", "curve(x)", "curve(", "enriques"] {
            assert!(matches!(registry_lookup(bad), Err(GeometryError::UnknownName(_))));
        }
    }

    #[test]
    fn json_ingest_names_the_violated_invariant() {
        let ok = HodgeDiamond::from_json(r#"{"dim": 2, "h": [[1,0,1],[0,20,0],[1,0,1]]}"#).unwrap();
        assert_eq!(ok, HodgeDiamond::k3());

        let cases = [
            (r#"{"dim": 2, "h": [[1,0,1],[0,20,0]]}"#, "shape"),
            (r#"{"dim": 1, "h": [[2,0],[0,2]]}"#, "h00_is_one"),
            (r#"{"dim": 2, "h": [[1,1,0],[0,1,1],[0,1,1]]}"#, "conjugation_symmetry"),
            (r#"{"dim": 2, "h": [[1,0,0],[0,1,0],[0,0,3]]}"#, "serre_duality"),
        ];
        for (text, name) in cases {
            match HodgeDiamond::from_json(text) {
                Err(GeometryError::InvariantViolated { invariant, .. }) => assert_eq!(invariant, name),
                other => panic!("{text}: expected {name}, got {other:?}"),
            }
        }
        assert!(matches!(HodgeDiamond::from_json("{"), Err(GeometryError::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = HodgeDiamond::abelian_surface();
        assert_eq!(HodgeDiamond::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn formal_surfaces_hit_every_euler_number() {
        for chi in -9..=30 {
            let d = HodgeDiamond::formal_surface_with_euler(chi);
            assert!(d.validate().is_ok());
            assert_eq!(euler_number(&d), BigInt::from(chi), "chi = {chi}");
        }
    }

    #[test]
    fn fibrations_need_a_surface_base() {
        assert_eq!(
            FibrationSpec::new(HodgeDiamond::curve(2), 1),
            Err(GeometryError::NotASurface(1))
        );
    }
}
