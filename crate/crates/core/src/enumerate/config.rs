//! Point configurations: reduced 0-cycles made of rational points and
//! Galois orbits `(g(t), x(t), y(t))`.

use serde::{Deserialize, Serialize};

use crate::etale::EtaleAlgebra;
use crate::field::Field;
use crate::poly::parse::{format_uni, parse_uni};
use crate::poly::UniPoly;
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::EnumError;

type Poly = UniPoly<FieldScalar>;

/// A closed point of the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSpec {
    /// Projective coordinates `[X0 : X1 : X2]`.
    Rational([FieldScalar; 3]),
    /// The roots of a squarefree `g`, with affine coordinates `x(t), y(t)`
    /// reduced modulo `g`.
    Orbit { modulus: Poly, x: Poly, y: Poly },
}

impl PointSpec {
    pub fn affine(f: &FieldDescriptor, x: FieldScalar, y: FieldScalar) -> Self {
        PointSpec::Rational([x, y, f.one()])
    }

    pub fn degree(&self) -> usize {
        match self {
            PointSpec::Rational(_) => 1,
            PointSpec::Orbit { modulus, .. } => modulus.deg(),
        }
    }

    /// Monic polynomial whose roots are `x + c y` over the affine points.
    fn fingerprint(&self, f: &FieldDescriptor, c: &FieldScalar) -> Result<Option<Poly>, EnumError> {
        match self {
            PointSpec::Rational(p) => {
                if f.is_zero(&p[2]) {
                    return Ok(None);
                }
                let zi = f.inv(&p[2]).unwrap();
                let v = f.mul(&f.add(&p[0], &f.mul(c, &p[1])), &zi);
                Ok(Some(UniPoly::new(f, vec![f.neg(&v), f.one()])))
            }
            PointSpec::Orbit { modulus, x, y } => {
                let a = EtaleAlgebra::from_components(f, vec![modulus.monic(f)])?;
                let v = a.add(&a.element(x), &a.scale(&a.element(y), c));
                Ok(Some(a.minimal_polynomial(&v)))
            }
        }
    }
}

/// A reduced 0-cycle on the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration {
    base: FieldDescriptor,
    points: Vec<PointSpec>,
}

const SEPARATION_TRIES: i64 = 8;

impl PointConfiguration {
    /// Validates squarefree moduli, distinct points inside each orbit and
    /// pairwise disjoint supports.
    pub fn new(base: FieldDescriptor, points: Vec<PointSpec>) -> Result<Self, EnumError> {
        let f = base;
        let mut normalized = Vec::with_capacity(points.len());
        for p in points {
            normalized.push(match p {
                PointSpec::Rational(c) => {
                    if c.iter().all(|v| f.is_zero(v)) {
                        return Err(EnumError::InvalidConfiguration("zero projective point".into()));
                    }
                    PointSpec::Rational(c)
                }
                PointSpec::Orbit { modulus, x, y } => {
                    if modulus.degree().is_none_or(|d| d == 0) {
                        return Err(EnumError::InvalidConfiguration("orbit modulus of degree zero".into()));
                    }
                    let g = modulus.monic(&f);
                    if !g.is_squarefree(&f)? {
                        return Err(EnumError::InvalidConfiguration("orbit modulus is not squarefree".into()));
                    }
                    PointSpec::Orbit { x: x.rem(&f, &g)?, y: y.rem(&f, &g)?, modulus: g }
                }
            });
        }
        let cfg = PointConfiguration { base, points: normalized };
        cfg.check_distinct()?;
        Ok(cfg)
    }

    fn check_distinct(&self) -> Result<(), EnumError> {
        let f = self.base;
        let n = self.points.len();
        let mut separated = vec![vec![false; n]; n];
        let mut orbit_ok = vec![false; n];
        for c in 0..SEPARATION_TRIES {
            let cf = f.from_i64(c);
            let prints: Vec<Option<Poly>> = self.points.iter().map(|p| p.fingerprint(&f, &cf)).collect::<Result<_, _>>()?;
            for i in 0..n {
                if let Some(pi) = &prints[i] {
                    orbit_ok[i] |= pi.deg() == self.points[i].degree();
                }
                for j in i + 1..n {
                    separated[i][j] |= match (&prints[i], &prints[j]) {
                        (Some(a), Some(b)) => a.gcd(&f, b).deg() == 0,
                        _ => true,
                    };
                }
            }
        }
        for i in 0..n {
            if !orbit_ok[i] && matches!(self.points[i], PointSpec::Orbit { .. }) {
                return Err(EnumError::InvalidConfiguration(format!("orbit {i} has coinciding points")));
            }
            for j in i + 1..n {
                let at_infinity = |p: &PointSpec| matches!(p, PointSpec::Rational(c) if f.is_zero(&c[2]));
                if at_infinity(&self.points[i]) && at_infinity(&self.points[j]) {
                    if let (PointSpec::Rational(a), PointSpec::Rational(b)) = (&self.points[i], &self.points[j]) {
                        separated[i][j] = !f.is_zero(&f.sub(&f.mul(&a[0], &b[1]), &f.mul(&a[1], &b[0])));
                    }
                }
                if !separated[i][j] {
                    return Err(EnumError::InvalidConfiguration(format!("points {i} and {j} overlap")));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> FieldDescriptor {
        self.base
    }

    pub fn points(&self) -> &[PointSpec] {
        &self.points
    }

    pub fn total_degree(&self) -> usize {
        self.points.iter().map(PointSpec::degree).sum()
    }

    /// Sorted orbit degrees; configurations of the same type share it.
    pub fn extension_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.points.iter().map(PointSpec::degree).collect();
        t.sort_unstable();
        t
    }

    /// Linear conditions on the coefficients of a form with the given
    /// monomials: one row per rational point, `deg g` rows per orbit.
    pub fn condition_rows(&self, monomials: &[[u32; 3]]) -> Vec<Vec<FieldScalar>> {
        let f = self.base;
        let mut rows = Vec::new();
        for p in &self.points {
            match p {
                PointSpec::Rational(c) => rows.push(
                    monomials.iter().map(|e| (0..3).fold(f.one(), |acc, i| f.mul(&acc, &f.pow(&c[i], u64::from(e[i]))))).collect(),
                ),
                PointSpec::Orbit { modulus, x, y } => {
                    let pow = |b: &Poly, k: u32| (0..k).fold(UniPoly::one(&f), |acc, _| acc.mul_mod(&f, b, modulus));
                    let values: Vec<Poly> = monomials.iter().map(|e| pow(x, e[0]).mul_mod(&f, &pow(y, e[1]), modulus)).collect();
                    for k in 0..modulus.deg() {
                        rows.push(values.iter().map(|v| v.coeff(&f, k)).collect());
                    }
                }
            }
        }
        rows
    }
}

/// Configuration file layout: exact strings only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub points: Vec<RawPoint>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawPoint {
    Orbit { modulus: String, x: String, y: String },
    Projective([String; 3]),
    Affine([String; 2]),
}

impl ConfigFile {
    pub fn to_configuration(&self) -> Result<PointConfiguration, EnumError> {
        let f: FieldDescriptor = self.field.parse().map_err(|e| EnumError::InvalidConfiguration(format!("{e}")))?;
        let sc = |s: &String| f.parse_scalar(s).map_err(|e| EnumError::InvalidConfiguration(format!("{s}: {e}")));
        let up = |s: &String| parse_uni(&f, s, "t").map_err(|e| EnumError::InvalidConfiguration(format!("{s}: {e}")));
        let mut pts = Vec::with_capacity(self.points.len());
        for p in &self.points {
            pts.push(match p {
                RawPoint::Projective([a, b, c]) => PointSpec::Rational([sc(a)?, sc(b)?, sc(c)?]),
                RawPoint::Affine([a, b]) => PointSpec::affine(&f, sc(a)?, sc(b)?),
                RawPoint::Orbit { modulus, x, y } => PointSpec::Orbit { modulus: up(modulus)?, x: up(x)?, y: up(y)? },
            });
        }
        PointConfiguration::new(f, pts)
    }

    pub fn from_configuration(cfg: &PointConfiguration, degree: Option<u32>) -> Self {
        let lit = |c: &FieldScalar| match c {
            FieldScalar::Modular { value, .. } => value.to_string(),
            other => other.to_string(),
        };
        let points = cfg
            .points()
            .iter()
            .map(|p| match p {
                PointSpec::Rational(c) => RawPoint::Projective([lit(&c[0]), lit(&c[1]), lit(&c[2])]),
                PointSpec::Orbit { modulus, x, y } => {
                    RawPoint::Orbit { modulus: format_uni(modulus, "t"), x: format_uni(x, "t"), y: format_uni(y, "t") }
                }
            })
            .collect();
        let field = match cfg.base() {
            FieldDescriptor::Rationals => "Q".to_string(),
            FieldDescriptor::PrimeField(p) => format!("Fp:{p}"),
        };
        ConfigFile { field, degree, points }
    }
}
