//! Floating-point prediction of the signature of the count over ℚ: real
//! roots of `D` are isolated exactly (Sturm) and refined to 80 bits, the
//! node of each real member is located numerically and the signs of its
//! Hessian determinant are summed.

use nalgebra::DMatrix;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::{BiPoly, UniPoly};
use crate::scalars::{ratio_to_f64, FieldDescriptor, FieldScalar};

use super::pencil::{cubic_pencil_discriminant, PencilOptions};
use super::{interpolate_curves, EnumError, PointConfiguration};

/// Minimum root separation and minimum `|e|` accepted by the oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-10;
/// Width of the isolating intervals, in bits.
pub const ORACLE_PRECISION_BITS: u32 = 80;
const NODE_RESIDUAL: f64 = 1e-7;

const Q: FieldDescriptor = FieldDescriptor::Rationals;

#[derive(Clone, Debug, Serialize)]
pub struct OracleOutcome {
    pub signature: i64,
    pub real_roots: usize,
    pub min_separation: f64,
    pub min_abs_e: f64,
}

fn rat(q: &FieldScalar) -> BigRational {
    q.as_rational().cloned().expect("rational scalar")
}

/// Integer polynomial with the same roots and a positive multiple.
fn integral(p: &UniPoly<FieldScalar>) -> Vec<BigInt> {
    let qs: Vec<BigRational> = p.coeffs().iter().map(rat).collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    primitive(qs.iter().map(|q| q.numer() * (&den / q.denom())).collect())
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|c| c / &g).collect()
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// `|lc(b)|^(deg a - deg b + 1) * (a mod b)`: a positive multiple of the remainder.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = b.len() - 1;
    let lead = b[n].clone();
    let mut r = a.to_vec();
    let steps = r.len().saturating_sub(n);
    for k in (0..steps).rev() {
        let c = std::mem::take(&mut r[k + n]);
        for x in r.iter_mut().take(k + n) {
            *x *= &lead;
        }
        for (j, bj) in b.iter().take(n).enumerate() {
            r[k + j] -= &c * bj;
        }
    }
    r.truncate(n);
    if lead.is_negative() && steps % 2 == 1 {
        r = r.into_iter().map(|c| -c).collect();
    }
    trim(r)
}

fn sturm_chain(d: &UniPoly<FieldScalar>) -> Vec<Vec<BigInt>> {
    let p0 = integral(d);
    let p1 = primitive(p0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect());
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        if chain[n - 1].len() <= 1 {
            break;
        }
        let r = positive_prem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(primitive(r.into_iter().map(|c| -c).collect()));
    }
    chain
}

/// Sign of `p(a / 2^k)`.
fn sign_at(p: &[BigInt], a: &BigInt, k: u32) -> i32 {
    let n = p.len() - 1;
    let mut h = p[n].clone();
    for i in (0..n).rev() {
        h = h * a + (&p[i] << (k as usize * (n - i)));
    }
    match h.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

fn sign_changes(chain: &[Vec<BigInt>], a: &BigInt, k: u32) -> usize {
    let signs: Vec<i32> = chain.iter().map(|p| sign_at(p, a, k)).filter(|s| *s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `[a, b] / 2^bits` of the real roots of a squarefree
/// `d`, each of width at most `2^-bits`.
fn real_roots(d: &UniPoly<FieldScalar>, bits: u32) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(d);
    let p = &chain[0];
    let lead = p.last().unwrap().abs();
    let ratio = p.iter().map(|c| c.abs()).max().unwrap() / &lead + 2u32;
    let bound_bits = ratio.bits() as usize + bits as usize;
    let bound = BigInt::one() << bound_bits;
    let mut stack = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match sign_changes(&chain, &a, bits) - sign_changes(&chain, &b, bits) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m: BigInt = (&a + &b) >> 1usize;
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    for (a, b) in out.iter_mut() {
        // the root lies in (a, b]; keep a sign change of d on [a, b]
        let sb = sign_at(p, b, bits);
        if sb == 0 {
            *a = b.clone();
            continue;
        }
        while &*b - &*a > BigInt::one() {
            let m: BigInt = (&*a + &*b) >> 1usize;
            let sm = sign_at(p, &m, bits);
            if sm == 0 {
                *a = m.clone();
                *b = m;
                break;
            }
            if sm == sb {
                *b = m;
            } else {
                *a = m;
            }
        }
    }
    out.sort();
    let den = BigInt::one() << bits as usize;
    out.into_iter().map(|(a, b)| (BigRational::new(a, den.clone()), BigRational::new(b, den.clone()))).collect()
}

type Terms = Vec<((u32, u32), f64)>;

fn to_f64(p: &BiPoly<FieldScalar>) -> Terms {
    p.terms().iter().map(|(e, c)| (*e, ratio_to_f64(&rat(c)))).collect()
}

fn eval(p: &Terms, x: f64, y: f64) -> f64 {
    p.iter().map(|((i, j), c)| c * x.powi(*i as i32) * y.powi(*j as i32)).sum()
}

/// Coefficients in `y` (up to `y^2`) as polynomials in `x`, low degree first.
fn y_coeffs(p: &Terms) -> [Vec<f64>; 3] {
    let mut out: [Vec<f64>; 3] = Default::default();
    for ((i, j), c) in p {
        let v = &mut out[*j as usize];
        if v.len() <= *i as usize {
            v.resize(*i as usize + 1, 0.0);
        }
        v[*i as usize] += c;
    }
    out
}

fn pmul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn psub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).collect()
}

/// Real roots of a polynomial from the eigenvalues of its companion matrix.
fn real_poly_roots(p: &[f64]) -> Vec<f64> {
    let scale = p.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let mut p: Vec<f64> = p.to_vec();
    while p.last().is_some_and(|c| c.abs() <= 1e-14 * scale) {
        p.pop();
    }
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    m.complex_eigenvalues().iter().filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs())).map(|z| z.re).collect()
}

/// Newton iteration on the gradient.
fn polish(gx: &Terms, gy: &Terms, h: [&Terms; 3], mut x: f64, mut y: f64) -> (f64, f64) {
    for _ in 0..30 {
        let (a, b) = (eval(gx, x, y), eval(gy, x, y));
        let (hxx, hxy, hyy) = (eval(h[0], x, y), eval(h[1], x, y), eval(h[2], x, y));
        let det = hxx * hyy - hxy * hxy;
        if det == 0.0 {
            break;
        }
        let dx = (hyy * a - hxy * b) / det;
        let dy = (hxx * b - hxy * a) / det;
        x -= dx;
        y -= dy;
        if dx.abs() + dy.abs() <= 1e-15 * (1.0 + x.abs() + y.abs()) {
            break;
        }
    }
    (x, y)
}

/// Sign of the Hessian determinant at the node of the real member `f`.
fn node_sign(f: &Terms, fx: &Terms, fy: &Terms, h: [&Terms; 3]) -> Result<(f64, f64), EnumError> {
    let [c1, b1, a1] = y_coeffs(fx);
    let [c2, b2, a2] = y_coeffs(fy);
    // Res_y of two quadratics in y
    let u = psub(&pmul(&a1, &c2), &pmul(&a2, &c1));
    let v = psub(&pmul(&a1, &b2), &pmul(&a2, &b1));
    let w = psub(&pmul(&b1, &c2), &pmul(&b2, &c1));
    let r = psub(&pmul(&u, &u), &pmul(&v, &w));
    let scale: f64 = f.iter().map(|(_, c)| c.abs()).sum();
    let mut best: Option<(f64, f64, f64)> = None;
    for x in real_poly_roots(&r) {
        let ys: Vec<f64> = [(&a1, &b1, &c1), (&a2, &b2, &c2)]
            .iter()
            .flat_map(|(a, b, c)| {
                let ev = |p: &Vec<f64>| p.iter().rev().fold(0.0, |acc, k| acc * x + k);
                let (a, b, c) = (ev(a), ev(b), ev(c));
                if a.abs() > 1e-12 * (b.abs() + c.abs()) {
                    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
                    vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]
                } else if b != 0.0 {
                    vec![-c / b]
                } else {
                    vec![]
                }
            })
            .collect();
        for y0 in ys {
            let (x1, y1) = polish(fx, fy, h, x, y0);
            let size = 1.0 + x1.abs().max(y1.abs());
            let res = (eval(f, x1, y1).abs() + eval(fx, x1, y1).abs() + eval(fy, x1, y1).abs()) / (scale * size.powi(3));
            if best.is_none_or(|b| res < b.2) {
                best = Some((x1, y1, res));
            }
        }
    }
    let (x, y, res) = best.ok_or_else(|| EnumError::NumericInstability("no real singular point found".into()))?;
    if !(res < NODE_RESIDUAL) {
        return Err(EnumError::NumericInstability(format!("node residual {res:e}")));
    }
    let e = eval(h[0], x, y) * eval(h[2], x, y) - eval(h[1], x, y).powi(2);
    let size = 1.0 + x.abs().max(y.abs());
    Ok((e, e.abs() / (scale * scale * size.powi(2))))
}

/// Predicted signature of the count for a configuration over ℚ.
pub fn real_signature_oracle(config: &PointConfiguration, opts: &PencilOptions) -> Result<OracleOutcome, EnumError> {
    if config.base() != Q {
        return Err(EnumError::InvalidConfiguration("the signature oracle needs a configuration over Q".into()));
    }
    let basis = interpolate_curves(config, 3)?;
    let basis: [_; 2] = basis.try_into().map_err(|_| EnumError::NotGeneric("pencil is not two dimensional".into()))?;
    let disc = cubic_pencil_discriminant(Q, &basis, opts)?;
    let roots = real_roots(&disc.discriminant, ORACLE_PRECISION_BITS);
    let mids: Vec<f64> = roots.iter().map(|(a, b)| ratio_to_f64(&((a + b) / BigRational::from_integer(BigInt::from(2))))).collect();
    let min_separation = mids.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if min_separation <= ORACLE_TOLERANCE {
        return Err(EnumError::NumericInstability(format!("root separation {min_separation:e}")));
    }
    let [f0, f1] = [0, 1].map(|i| to_f64(&disc.basis[i].dehomogenize(&Q, 2)));
    let mut signature = 0i64;
    let mut min_abs_e = f64::INFINITY;
    for lam in &mids {
        let mut f: Terms = f0.clone();
        f.extend(f1.iter().map(|(e, c)| (*e, c * lam)));
        let d = |p: &Terms, dx: bool| -> Terms {
            p.iter()
                .filter_map(|((i, j), c)| {
                    let k = if dx { *i } else { *j };
                    (k > 0).then(|| (if dx { (i - 1, *j) } else { (*i, j - 1) }, c * k as f64))
                })
                .collect()
        };
        let (fx, fy) = (d(&f, true), d(&f, false));
        let (fxx, fxy, fyy) = (d(&fx, true), d(&fx, false), d(&fy, false));
        let (e, rel) = node_sign(&f, &fx, &fy, [&fxx, &fxy, &fyy])?;
        if rel <= ORACLE_TOLERANCE {
            return Err(EnumError::NumericInstability(format!("|e| = {rel:e} at a real member")));
        }
        min_abs_e = min_abs_e.min(rel);
        signature += if e > 0.0 { 1 } else { -1 };
    }
    Ok(OracleOutcome { signature, real_roots: mids.len(), min_separation, min_abs_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn sturm_isolates_roots() {
        // (x^2 - 2)(x - 1/3)(x^2 + 1)
        let p = UniPoly::from_i64(&Q, &[-2, 0, 1])
            .mul(&Q, &UniPoly::new(&Q, vec![Q.rational(-1, 3), Q.one()]))
            .mul(&Q, &UniPoly::from_i64(&Q, &[1, 0, 1]));
        let r = real_roots(&p, 40);
        assert_eq!(r.len(), 3);
        let mids: Vec<f64> = r.iter().map(|(a, b)| ratio_to_f64(&((a + b) / BigRational::from_integer(2.into())))).collect();
        for (m, want) in mids.iter().zip([-2f64.sqrt(), 1.0 / 3.0, 2f64.sqrt()]) {
            assert!((m - want).abs() < 1e-11);
        }
    }

    #[test]
    fn companion_roots() {
        let mut r = real_poly_roots(&[-6.0, 11.0, -6.0, 1.0]);
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(real_poly_roots(&[1.0, 0.0, 1.0]).is_empty());
    }
}
