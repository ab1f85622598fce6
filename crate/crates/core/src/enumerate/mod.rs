//! Quadratic counts `Wel_d` of rational curves through point
//! configurations for `d <= 3`, with a rank oracle, a floating-point
//! signature oracle and a harness comparing configurations.

mod batch;
mod config;
mod generate;
mod kontsevich;
mod oracle;
mod pencil;

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curvesing::{welschinger_class, CurveError, PlaneCurve, WelOptions};
use crate::etale::EtaleError;
use crate::gwforms::{transfer_trace, GWInvariants, GwError, QuadForm};
use crate::linalg::Matrix;
use crate::poly::parse::format_uni;
use crate::poly::{PolyError, TernaryForm};
use crate::scalars::FieldScalar;

#[cfg(feature = "parallel")]
pub use batch::run_batch_parallel;
pub use batch::{run_batch, run_batch_sequential, thread_cap, BatchOutcome, BatchRun};
pub use config::{ConfigFile, PointConfiguration, PointSpec, RawPoint};
pub use generate::{fixed_orbit_modulus, generate_config, GENERATION_ATTEMPTS};
pub use kontsevich::kontsevich_n;
pub use oracle::{real_signature_oracle, OracleOutcome, ORACLE_PRECISION_BITS, ORACLE_TOLERANCE};
pub use pencil::{
    cubic_pencil_discriminant, discriminant_by_elimination, node_over_discriminant, poly_det, resultant_matrix, PencilDiagnostics,
    PencilDiscriminant, PencilOptions, PencilResult, PENCIL_NODES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("configuration is not generic: {0}")]
    NotGeneric(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("degree {0} is not supported (1, 2 or 3)")]
    UnsupportedDegree(u32),
    #[error("numeric oracle inconclusive: {0}")]
    NumericInstability(String),
    #[error("no generic configuration after {0} attempts")]
    GenerationExhausted(usize),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Gw(#[from] GwError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Exponent vectors of the degree-`d` monomials in `X0, X1, X2`.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Basis of the degree-`d` forms through the configuration; the conditions
/// must be independent. Over ℚ the basis is integral and primitive, and a
/// two-dimensional basis is Lagrange–Gauss reduced.
pub fn interpolate_curves(config: &PointConfiguration, d: u32) -> Result<Vec<TernaryForm<FieldScalar>>, EnumError> {
    let f = config.base();
    let mons = monomials(d);
    let n = config.total_degree();
    if n + 1 > mons.len() {
        return Err(EnumError::InvalidConfiguration(format!("{n} conditions exceed the {} coefficients of degree {d}", mons.len())));
    }
    let rows = config.condition_rows(&mons);
    let m = Matrix::from_rows(rows);
    let rank = m.rank(&f);
    if rank < n {
        return Err(EnumError::NotGeneric(format!("interpolation conditions have rank {rank} < {n}")));
    }
    let mut kernel = m.kernel(&f);
    if f.is_rationals() {
        let mut ints: Vec<Vec<BigInt>> = kernel.iter().map(|v| primitive_integral(v)).collect();
        if let [a, b] = ints.as_mut_slice() {
            gauss_reduce(a, b);
        }
        kernel = ints.into_iter().map(|v| v.into_iter().map(|c| FieldScalar::Rational(BigRational::from_integer(c))).collect()).collect();
    }
    kernel
        .into_iter()
        .map(|v| Ok(TernaryForm::new(&f, d, mons.iter().zip(v).map(|(e, c)| (*e, c)))?))
        .collect()
}

/// The primitive integer vector on the line through a rational vector,
/// with a positive first nonzero entry.
fn primitive_integral(v: &[FieldScalar]) -> Vec<BigInt> {
    let qs: Vec<BigRational> = v.iter().map(|c| c.as_rational().cloned().expect("rational scalar")).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &g * &sign).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lagrange–Gauss reduction of a rank-two integer lattice basis.
fn gauss_reduce(a: &mut Vec<BigInt>, b: &mut Vec<BigInt>) {
    loop {
        if dot(b, b) < dot(a, a) {
            std::mem::swap(a, b);
        }
        let (n, d) = (dot(a, b), dot(a, a));
        let mu = BigRational::new(n, d).round().to_integer();
        if mu.is_zero() {
            break;
        }
        for (x, y) in b.iter_mut().zip(a.iter()) {
            *x -= &mu * y;
        }
    }
}

/// Replayable choices and timing.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CountDiagnostics {
    pub pencil: Option<PencilDiagnostics>,
    pub discriminant: Option<String>,
    pub curve: Option<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub degree: u32,
    pub extension_type: Vec<usize>,
    pub form: QuadForm,
    pub invariants: GWInvariants,
    pub diagnostics: CountDiagnostics,
}

impl CountReport {
    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn signature(&self) -> Option<i64> {
        self.invariants.signature
    }
}

/// `d = 1, 2`: the unique curve is smooth, so the count is `<1>`.
pub fn count_small_degree(config: &PointConfiguration, d: u32) -> Result<CountReport, EnumError> {
    let start = Instant::now();
    if !(1..=2).contains(&d) {
        return Err(EnumError::UnsupportedDegree(d));
    }
    check_total(config, d)?;
    let f = config.base();
    let basis = interpolate_curves(config, d)?;
    let [form] = <[_; 1]>::try_from(basis).map_err(|_| EnumError::NotGeneric("curve is not unique".into()))?;
    let curve = PlaneCurve::new(f, form)?;
    let w = match welschinger_class(&curve, &WelOptions::default()) {
        Ok(w) => w,
        Err(CurveError::NotIntegral | CurveError::WrongNodeCount { .. } | CurveError::NotNodal(_)) => {
            return Err(EnumError::NotGeneric("interpolated curve is singular".into()))
        }
        Err(e) => return Err(e.into()),
    };
    let form = w.form();
    Ok(CountReport {
        degree: d,
        extension_type: config.extension_type(),
        invariants: form.invariants(),
        form,
        diagnostics: CountDiagnostics {
            curve: Some(crate::poly::parse::format_ternary(curve.form())),
            elapsed_ms: start.elapsed().as_millis(),
            ..CountDiagnostics::default()
        },
    })
}

fn check_total(config: &PointConfiguration, d: u32) -> Result<(), EnumError> {
    let n = config.total_degree();
    if n != 3 * d as usize - 1 {
        return Err(EnumError::InvalidConfiguration(format!("degree {d} needs {} points, got {n}", 3 * d - 1)));
    }
    Ok(())
}

/// The pencil through eight points, its singular members and their nodes.
pub fn pencil_of(config: &PointConfiguration, opts: &PencilOptions) -> Result<PencilResult, EnumError> {
    check_total(config, 3)?;
    let basis = interpolate_curves(config, 3)?;
    let basis: [TernaryForm<FieldScalar>; 2] = basis.try_into().map_err(|_| EnumError::NotGeneric("pencil is not two dimensional".into()))?;
    let disc = cubic_pencil_discriminant(config.base(), &basis, opts)?;
    node_over_discriminant(disc)
}

/// `Wel_d` as a quadratic form over the base field.
pub fn welschinger_number(config: &PointConfiguration, d: u32, opts: &PencilOptions) -> Result<CountReport, EnumError> {
    match d {
        1 | 2 => count_small_degree(config, d),
        3 => {
            let start = Instant::now();
            let mut res = pencil_of(config, opts)?;
            let form = transfer_trace(&mut res.discriminant.algebra, &res.e)?;
            Ok(CountReport {
                degree: 3,
                extension_type: config.extension_type(),
                invariants: form.invariants(),
                form,
                diagnostics: CountDiagnostics {
                    pencil: Some(res.discriminant.diagnostics.clone()),
                    discriminant: Some(format_uni(&res.discriminant.discriminant, "l")),
                    curve: None,
                    elapsed_ms: start.elapsed().as_millis(),
                },
            })
        }
        other => Err(EnumError::UnsupportedDegree(other)),
    }
}

/// Verdict of a move test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// Extension types differ: nothing is asserted.
    Skipped,
    Equivalent,
    Inequivalent,
    /// Types agree but the Hasse symbols at the prime divisors of these
    /// cofactors could not be computed.
    Undecided(Vec<String>),
}

/// Outcome of comparing two configurations.
#[derive(Clone, Debug)]
pub struct MoveReport {
    pub first: CountReport,
    pub second: CountReport,
    pub same_type: bool,
    pub comparison: Comparison,
}

/// Compute both counts; compare them when the extension types agree.
pub fn move_test(a: &PointConfiguration, b: &PointConfiguration, d: u32, opts: &PencilOptions) -> Result<MoveReport, EnumError> {
    if a.base() != b.base() || a.total_degree() != b.total_degree() {
        return Err(EnumError::InvalidConfiguration("configurations differ in base field or total degree".into()));
    }
    let first = welschinger_number(a, d, opts)?;
    let second = welschinger_number(b, d, opts)?;
    let same_type = a.extension_type() == b.extension_type() && a.extension_type().iter().all(|&k| k <= 3);
    let comparison = if !same_type {
        Comparison::Skipped
    } else {
        match first.form.equivalent(&second.form) {
            Ok(true) => Comparison::Equivalent,
            Ok(false) => Comparison::Inequivalent,
            Err(GwError::Inconclusive(c)) => Comparison::Undecided(c),
            Err(e) => return Err(e.into()),
        }
    };
    Ok(MoveReport { first, second, same_type, comparison })
}

#[cfg(test)]
mod tests;
