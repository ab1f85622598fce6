//! Seeded configurations of a prescribed extension type.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::poly::UniPoly;
use crate::scalars::extension::is_irreducible_mod_p;
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::config::{PointConfiguration, PointSpec};
use super::pencil::{cubic_pencil_discriminant, PencilOptions};
use super::{count_small_degree, interpolate_curves, EnumError};

pub const GENERATION_ATTEMPTS: usize = 64;
const COORD: i64 = 20;
const ORBIT_COEFF: i64 = 5;

/// The residue field used for every orbit of the given degree, so that
/// configurations of one type share their residue fields: `t^2 + 1` and
/// `t^3 - 2` over ℚ, `t^2 - n0` and the first irreducible `t^3 + a t + b`
/// over 𝔽_p.
pub fn fixed_orbit_modulus(f: &FieldDescriptor, degree: usize) -> Option<UniPoly<FieldScalar>> {
    match (f, degree) {
        (FieldDescriptor::Rationals, 2) => Some(UniPoly::from_i64(f, &[1, 0, 1])),
        (FieldDescriptor::Rationals, 3) => Some(UniPoly::from_i64(f, &[-2, 0, 0, 1])),
        (FieldDescriptor::PrimeField(_), 2) => {
            let n0 = f.least_nonresidue()? as i64;
            Some(UniPoly::from_i64(f, &[-n0, 0, 1]))
        }
        (FieldDescriptor::PrimeField(p), 3) => {
            let p = *p;
            (0..p).flat_map(|a| (1..p).map(move |b| (a, b))).find(|&(a, b)| is_irreducible_mod_p(&[b, a, 0, 1], p)).map(|(a, b)| {
                UniPoly::new(f, vec![f.from_i64(b as i64), f.from_i64(a as i64), f.zero(), f.one()])
            })
        }
        _ => None,
    }
}

fn random_point(f: &FieldDescriptor, rng: &mut ChaCha8Rng, degree: usize) -> Result<PointSpec, EnumError> {
    let mut c = |r: i64| f.from_i64(rng.gen_range(-r..=r));
    if degree == 1 {
        let x = c(COORD);
        let y = c(COORD);
        return Ok(PointSpec::affine(f, x, y));
    }
    let modulus = fixed_orbit_modulus(f, degree).ok_or_else(|| EnumError::InvalidConfiguration(format!("orbits of degree {degree} are not supported")))?;
    let mut coords = |lead: i64| {
        let mut cs = vec![c(COORD)];
        cs.extend((1..degree).map(|_| c(lead)));
        UniPoly::new(f, cs)
    };
    let x = coords(ORBIT_COEFF);
    let y = coords(ORBIT_COEFF);
    Ok(PointSpec::Orbit { modulus, x, y })
}

fn precheck(cfg: &PointConfiguration, d: u32, seed: u64) -> Result<(), EnumError> {
    if cfg.total_degree() != 3 * d as usize - 1 {
        return interpolate_curves(cfg, d).map(|_| ());
    }
    match d {
        1 | 2 => count_small_degree(cfg, d).map(|_| ()),
        3 => {
            let basis: [_; 2] = interpolate_curves(cfg, 3)?.try_into().map_err(|_| EnumError::NotGeneric("pencil is not two dimensional".into()))?;
            let opts = PencilOptions { seed, ..PencilOptions::default() };
            cubic_pencil_discriminant(cfg.base(), &basis, &opts).map(|_| ())
        }
        _ => interpolate_curves(cfg, d).map(|_| ()),
    }
}

/// A configuration whose orbit degrees are `kind` (each in `1..=3`) and
/// whose degree-`d` interpolation conditions are independent. Candidates
/// that are visibly not generic are resampled: for `d <= 2` a singular
/// interpolating curve, for `d = 3` a pencil whose discriminant is not
/// squarefree of degree 12 (three collinear points, six on a conic, a
/// cuspidal member).
pub fn generate_config(f: FieldDescriptor, kind: &[usize], d: u32, seed: u64) -> Result<PointConfiguration, EnumError> {
    if let Some(bad) = kind.iter().find(|k| !(1..=3).contains(*k)) {
        return Err(EnumError::InvalidConfiguration(format!("orbits of degree {bad} are not supported")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let pts: Vec<PointSpec> = kind.iter().map(|&k| random_point(&f, &mut rng, k)).collect::<Result<_, _>>()?;
        let Ok(cfg) = PointConfiguration::new(f, pts) else { continue };
        match precheck(&cfg, d, seed) {
            Ok(()) => return Ok(cfg),
            Err(EnumError::NotGeneric(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(EnumError::GenerationExhausted(GENERATION_ATTEMPTS))
}
