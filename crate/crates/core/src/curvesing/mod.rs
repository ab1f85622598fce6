//! Singular loci of plane curves, singularity types, the local invariant
//! `e_p(C)` and the rank-one class `Wel_K(C)`.

mod classify;
mod models;
mod solve;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::etale::{dynamic_eval, AlgebraElement, EtaleError};
use crate::field::{Field, SquareTest};
use crate::gwforms::QuadForm;
use crate::linalg::Matrix;
use crate::poly::parse::parse_ternary;
use crate::poly::{BiPoly, PolyError, TernaryForm, UniPoly};
use crate::scalars::{FieldDescriptor, FiniteExtension};

pub use classify::{classify_point, substitute_affine, SingularityKind};
pub use models::{tacnode_deformation_check, tacnode_identity, triple_point_curve, TacnodeIdentity, TacnodeRecord};
pub use solve::{eval_bipoly, resultant_y, solve_zero_dim, ZeroDimSolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("zero form or degree below one")]
    Degenerate,
    #[error("chart form is zero")]
    ZeroChart,
    #[error("no separating projection found; the singular scheme is not reduced or too degenerate")]
    NotReduced,
    #[error("singular locus is positive dimensional (form not squarefree)")]
    PositiveDimensional,
    #[error("residual check failed on the computed singular points")]
    ResidualCheckFailed,
    #[error("singular points on the line at infinity after {0} coordinate changes")]
    SingularAtInfinity(usize),
    #[error("point is not singular")]
    NonSingularPoint,
    #[error("some singular point is not an ordinary node")]
    NotANode,
    #[error("curve has non-nodal singularities: {0:?}")]
    NotNodal(Vec<SingularityKind>),
    #[error("expected {expected} nodes, found {found}")]
    WrongNodeCount { expected: usize, found: usize },
    #[error("geometric integrality not certified")]
    NotIntegral,
    #[error("extension modulus is reducible")]
    ReducibleModulus,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
}

/// Options for the global invariant.
#[derive(Clone, Debug)]
pub struct WelOptions {
    /// Require `(d - 1)(d - 2)/2` nodes.
    pub enforce_node_count: bool,
    /// Caller asserts geometric integrality.
    pub assume_integral: bool,
    /// Seed for coordinate changes that move singular points off the chart line.
    pub seed: u64,
    pub max_shear: usize,
    pub max_coordinate_changes: usize,
}

impl Default for WelOptions {
    fn default() -> Self {
        WelOptions { enforce_node_count: true, assume_integral: false, seed: 0x5eed, max_shear: 48, max_coordinate_changes: 8 }
    }
}

/// A plane curve `F = 0` with an affine chart `L != 0`.
#[derive(Clone, Debug)]
pub struct PlaneCurve<F: Field> {
    field: F,
    form: TernaryForm<F::Elem>,
    chart: [F::Elem; 3],
}

impl<F: Field> PlaneCurve<F> {
    pub fn new(field: F, form: TernaryForm<F::Elem>) -> Result<Self, CurveError> {
        if form.is_zero() || form.degree() == 0 {
            return Err(CurveError::Degenerate);
        }
        let chart = [field.zero(), field.zero(), field.one()];
        Ok(PlaneCurve { field, form, chart })
    }

    pub fn with_chart(mut self, chart: [F::Elem; 3]) -> Result<Self, CurveError> {
        if chart.iter().all(|c| self.field.is_zero(c)) {
            return Err(CurveError::ZeroChart);
        }
        self.chart = chart;
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn form(&self) -> &TernaryForm<F::Elem> {
        &self.form
    }

    pub fn chart(&self) -> &[F::Elem; 3] {
        &self.chart
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    /// `(d - 1)(d - 2)/2`.
    pub fn arithmetic_genus(&self) -> usize {
        let d = self.degree() as usize;
        d.saturating_sub(1) * d.saturating_sub(2) / 2
    }

    /// Coordinates `(X_a, X_b, L)` as rows, `X_a, X_b` the standard
    /// coordinates other than the first one on which `L` depends.
    fn chart_matrix(&self) -> Matrix<F::Elem> {
        let f = &self.field;
        let k = (0..3).find(|&i| !f.is_zero(&self.chart[i])).unwrap();
        let unit = |i: usize| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        Matrix::from_rows(vec![unit(others[0]), unit(others[1]), self.chart.to_vec()])
    }

    /// The form in coordinates whose last member is the chart form.
    pub fn chart_form(&self) -> TernaryForm<F::Elem> {
        let inv = self.chart_matrix().inverse(&self.field).expect("chart matrix is invertible");
        self.form.coordinate_change(&self.field, &inv).expect("invertible")
    }

    /// `F / L^d` in the affine coordinates of the chart.
    pub fn affine(&self) -> BiPoly<F::Elem> {
        self.chart_form().dehomogenize(&self.field, 2)
    }

    pub fn scaled(&self, lambda: &F::Elem) -> Self {
        PlaneCurve { field: self.field.clone(), form: self.form.scale(&self.field, lambda), chart: self.chart.clone() }
    }

    /// The curve `F(M X) = 0`, carrying the chart `L(M X)`.
    pub fn transformed(&self, m: &Matrix<F::Elem>) -> Result<Self, CurveError> {
        let f = &self.field;
        let form = self.form.coordinate_change(f, m)?;
        let chart = [0, 1, 2].map(|j| (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.chart[i], m.get(i, j)))));
        Ok(PlaneCurve { field: f.clone(), form, chart })
    }
}

impl PlaneCurve<FieldDescriptor> {
    pub fn parse(desc: FieldDescriptor, text: &str) -> Result<Self, CurveError> {
        Self::new(desc, parse_ternary(&desc, text)?)
    }
}

/// Singular points of a curve as an étale algebra with coordinates.
#[derive(Clone, Debug)]
pub struct SingularLocus<F: Field> {
    /// `None` for a smooth curve.
    pub points: Option<ZeroDimSolution<F>>,
    /// The affine equation the coordinates refer to.
    pub affine: BiPoly<F::Elem>,
    /// Coordinate change applied after the chart, if one was needed.
    pub coordinate_change: Option<Matrix<F::Elem>>,
}

impl<F: Field> SingularLocus<F> {
    pub fn degree(&self) -> usize {
        self.points.as_ref().map_or(0, |p| p.algebra.degree())
    }

    pub fn projection(&self) -> Option<i64> {
        self.points.as_ref().map(|p| p.projection)
    }
}

/// Whether some singular point of `g` lies on `X2 = 0`.
fn singular_at_infinity<F: Field>(f: &F, g: &TernaryForm<F::Elem>) -> bool {
    let mut forms = vec![g.clone()];
    forms.extend((0..3).map(|i| g.partial(f, i)));
    common_zero_at_infinity(f, &forms)
}

/// Whether the forms have a common zero on the line `X2 = 0`.
pub fn common_zero_at_infinity<F: Field>(f: &F, forms: &[TernaryForm<F::Elem>]) -> bool {
    let restricted: Vec<UniPoly<F::Elem>> = forms
        .iter()
        .map(|h| {
            let dh = h.degree() as usize;
            let mut cs = vec![f.zero(); dh + 1];
            for (e, c) in h.terms() {
                if e[2] == 0 {
                    cs[e[0] as usize] = c.clone();
                }
            }
            UniPoly::new(f, cs)
        })
        .collect();
    let nonzero: Vec<&UniPoly<F::Elem>> = restricted.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return true;
    }
    // [1:0:0] is a common zero iff every restricted form lacks its top X0 power.
    let top_vanishes = forms.iter().zip(&restricted).all(|(h, r)| {
        let dh = h.degree() as usize;
        r.degree().is_none_or(|k| k < dh)
    });
    if top_vanishes {
        return true;
    }
    let g0 = nonzero.iter().skip(1).fold(nonzero[0].monic(f), |acc, p| acc.gcd(f, p));
    g0.deg() > 0
}

/// Seeded invertible matrix with entries in `-5..=5`.
pub fn random_invertible<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..3).map(|_| (0..3).map(|_| f.from_i64(rng.gen_range(-5..=5))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if !f.is_zero(&m.det(f)) {
            return m;
        }
    }
}

/// Compute the singular locus in the chart, changing coordinates (seeded)
/// when singular points lie on the chart line.
pub fn singular_locus<F: Field>(curve: &PlaneCurve<F>, opts: &WelOptions) -> Result<SingularLocus<F>, CurveError> {
    let f = curve.field();
    let base = curve.chart_form();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..=opts.max_coordinate_changes {
        let (g, change) = if attempt == 0 {
            (base.clone(), None)
        } else {
            let m = random_invertible(f, &mut rng);
            (base.coordinate_change(f, &m)?, Some(m))
        };
        let affine = g.dehomogenize(f, 2);
        let eqs = [affine.clone(), affine.partial_x(f), affine.partial_y(f)];
        if singular_at_infinity(f, &g) {
            // a singular curve of points meets every line
            if attempt == 0 && matches!(solve_zero_dim(f, &eqs, opts.max_shear), Err(CurveError::PositiveDimensional)) {
                return Err(CurveError::PositiveDimensional);
            }
            continue;
        }
        let points = solve_zero_dim(f, &eqs, opts.max_shear)?;
        return Ok(SingularLocus { points, affine, coordinate_change: change });
    }
    Err(CurveError::SingularAtInfinity(opts.max_coordinate_changes))
}

/// Hessian determinant `f_xx f_yy - f_xy^2` of an affine equation.
pub fn hessian_determinant<F: Field>(f: &F, p: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    let fx = p.partial_x(f);
    let fy = p.partial_y(f);
    let (fxx, fxy, fyy) = (fx.partial_x(f), fx.partial_y(f), fy.partial_y(f));
    fxx.mul(f, &fyy).sub(f, &fxy.mul(f, &fxy))
}

/// `e = det Hess(f)` at the singular points; fails with `NotANode` if it is
/// a zero divisor. May refine the algebra.
pub fn local_invariant<F: Field>(locus: &mut SingularLocus<F>) -> Result<Option<AlgebraElement<F::Elem>>, CurveError> {
    let affine = locus.affine.clone();
    let Some(pts) = locus.points.as_mut() else { return Ok(None) };
    let f = pts.algebra.base().clone();
    let h = hessian_determinant(&f, &affine);
    let e = eval_bipoly(&pts.algebra, &h, &pts.x, &pts.y);
    let (_, zeros) = pts.algebra.invert_or_split(&e).map_err(|_| CurveError::NotANode)?;
    if !zeros.is_empty() {
        return Err(CurveError::NotANode);
    }
    Ok(Some(pts.algebra.sync(&e)))
}

/// Singularity type on each component of the locus.
pub fn classify_locus<F: Field>(locus: &SingularLocus<F>) -> Result<Vec<(UniPoly<F::Elem>, SingularityKind)>, CurveError> {
    let Some(pts) = &locus.points else { return Ok(Vec::new()) };
    let f = pts.algebra.base();
    let mut out = Vec::new();
    for m in pts.algebra.components() {
        let xr = pts.x.residue_on(f, m);
        let yr = pts.y.residue_on(f, m);
        let (res, _) = dynamic_eval(f, m, |k| {
            let x = k.reduce(&xr);
            let y = k.reduce(&yr);
            classify_point(k, &locus.affine, |c| k.embed(c), &x, &y)
        });
        for (mm, kind) in res {
            out.push((mm, kind?));
        }
    }
    Ok(out)
}

/// Result of the global invariant computation.
#[derive(Clone, Debug)]
pub struct WelResult<F: Field> {
    /// `Nm_{A/K}(e)`; the class is `<norm>`.
    pub norm: F::Elem,
    pub node_count: usize,
    pub projection: Option<i64>,
    pub coordinate_change: Option<Matrix<F::Elem>>,
    /// Moduli of the components of the node algebra.
    pub components: Vec<UniPoly<F::Elem>>,
}

impl WelResult<FieldDescriptor> {
    pub fn form(&self) -> QuadForm {
        QuadForm::new(self.norm.descriptor(), vec![self.norm.clone()]).expect("norm of a unit")
    }
}

impl<F: SquareTest> WelResult<F> {
    pub fn same_class(&self, f: &F, other: &F::Elem) -> bool {
        f.same_square_class(&self.norm, other)
    }
}

/// `Wel_K(C) = <prod Nm e_p>` for a curve whose singularities are nodes.
pub fn welschinger_class<F: Field>(curve: &PlaneCurve<F>, opts: &WelOptions) -> Result<WelResult<F>, CurveError> {
    let f = curve.field().clone();
    let mut locus = match singular_locus(curve, opts) {
        Err(CurveError::PositiveDimensional) => return Err(CurveError::NotIntegral),
        other => other?,
    };
    let e = match local_invariant(&mut locus) {
        Ok(e) => e,
        Err(CurveError::NotANode) => {
            let kinds = classify_locus(&locus)?.into_iter().map(|(_, k)| k).filter(|k| *k != SingularityKind::Node).collect();
            return Err(CurveError::NotNodal(kinds));
        }
        Err(other) => return Err(other),
    };
    let nodes = locus.degree();
    let expected = curve.arithmetic_genus();
    if opts.enforce_node_count && nodes != expected {
        return Err(CurveError::WrongNodeCount { expected, found: nodes });
    }
    if !opts.assume_integral && (curve.degree() > 3 || nodes > expected) {
        return Err(CurveError::NotIntegral);
    }
    let (norm, components) = match (&locus.points, e) {
        (Some(p), Some(e)) => (p.algebra.norm(&e), p.algebra.components().to_vec()),
        _ => (f.one(), Vec::new()),
    };
    Ok(WelResult { norm, node_count: nodes, projection: locus.projection(), coordinate_change: locus.coordinate_change.clone(), components })
}

/// The curve with coefficients pushed into `F_p[t]/(q)`.
pub fn base_change_curve(curve: &PlaneCurve<FieldDescriptor>, modulus: &[u64]) -> Result<PlaneCurve<FiniteExtension>, CurveError> {
    let ext = FiniteExtension::new(*curve.field(), modulus.to_vec()).map_err(|_| CurveError::ReducibleModulus)?;
    let form = curve.form().map(&ext, |c| ext.embed(c));
    let chart = curve.chart().clone().map(|c| ext.embed(&c));
    PlaneCurve::new(ext, form)?.with_chart(chart)
}

#[cfg(test)]
mod tests;
