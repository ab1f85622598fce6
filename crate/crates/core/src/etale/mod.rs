//! Étale algebras K[t]/(g) with g squarefree, kept as a product of coprime
//! components that refine on demand.

mod dynamic;

pub use dynamic::{dynamic_eval, DynamicField, SplitEvent};

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{PolyError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtaleError {
    #[error("modulus is not squarefree")]
    NotSquarefree,
    #[error("modulus must have degree at least one")]
    Degree,
    #[error("element is zero on every component")]
    ZeroElement,
    #[error("element is a zero divisor")]
    ZeroDivisor,
    #[error("element does not generate the algebra")]
    NotPrimitive,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `∏ K[t]/(g_i)` with the `g_i` monic, squarefree and pairwise coprime.
#[derive(Clone, Debug)]
pub struct EtaleAlgebra<F: Field> {
    base: F,
    components: Vec<UniPoly<F::Elem>>,
    splits: Vec<SplitEvent<F::Elem>>,
}

/// Element of an étale algebra, stored against the component list that was
/// current when it was produced; [`EtaleAlgebra::sync`] re-expresses it after
/// later refinements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    moduli: Vec<UniPoly<E>>,
    residues: Vec<UniPoly<E>>,
}

impl<E: Clone> AlgebraElement<E> {
    pub fn residues(&self) -> &[UniPoly<E>] {
        &self.residues
    }

    pub fn moduli(&self) -> &[UniPoly<E>] {
        &self.moduli
    }
}

impl<E: Clone + std::fmt::Debug + PartialEq> AlgebraElement<E> {
    /// Residue modulo `m`, which must divide one of the stored moduli.
    pub fn residue_on<F: Field<Elem = E>>(&self, f: &F, m: &UniPoly<E>) -> UniPoly<E> {
        for (old, r) in self.moduli.iter().zip(&self.residues) {
            if old == m {
                return r.clone();
            }
            if old.deg() >= m.deg() && old.rem(f, m).map(|x| x.is_zero()).unwrap_or(false) {
                return r.rem(f, m).expect("monic modulus");
            }
        }
        panic!("modulus is not a refinement of this element's components");
    }
}

/// Single-component algebra `K[t]/(g)`; `g` is made monic.
pub fn make_algebra<F: Field>(base: &F, g: &UniPoly<F::Elem>) -> Result<EtaleAlgebra<F>, EtaleError> {
    if g.degree().unwrap_or(0) == 0 {
        return Err(EtaleError::Degree);
    }
    let g = g.monic(base);
    if !g.is_squarefree(base)? {
        return Err(EtaleError::NotSquarefree);
    }
    Ok(EtaleAlgebra { base: base.clone(), components: vec![g], splits: Vec::new() })
}

impl<F: Field> EtaleAlgebra<F> {
    /// Algebra from already coprime squarefree monic components.
    pub fn from_components(base: &F, components: Vec<UniPoly<F::Elem>>) -> Result<Self, EtaleError> {
        if components.is_empty() || components.iter().any(|c| c.degree().unwrap_or(0) == 0) {
            return Err(EtaleError::Degree);
        }
        let components: Vec<_> = components.iter().map(|c| c.monic(base)).collect();
        for (i, c) in components.iter().enumerate() {
            if !c.is_squarefree(base)? {
                return Err(EtaleError::NotSquarefree);
            }
            for d in &components[..i] {
                if c.gcd(base, d).deg() > 0 {
                    return Err(EtaleError::NotSquarefree);
                }
            }
        }
        Ok(EtaleAlgebra { base: base.clone(), components, splits: Vec::new() })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn components(&self) -> &[UniPoly<F::Elem>] {
        &self.components
    }

    pub fn splits(&self) -> &[SplitEvent<F::Elem>] {
        &self.splits
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(|c| c.deg()).sum()
    }

    /// Product of the component moduli.
    pub fn modulus(&self) -> UniPoly<F::Elem> {
        self.components.iter().fold(UniPoly::one(&self.base), |acc, c| acc.mul(&self.base, c))
    }

    pub fn element(&self, p: &UniPoly<F::Elem>) -> AlgebraElement<F::Elem> {
        let f = &self.base;
        AlgebraElement {
            moduli: self.components.clone(),
            residues: self.components.iter().map(|c| p.rem(f, c).expect("monic")).collect(),
        }
    }

    /// Element given by one residue per current component.
    pub fn element_from_residues(&self, residues: Vec<UniPoly<F::Elem>>) -> AlgebraElement<F::Elem> {
        assert_eq!(residues.len(), self.components.len());
        let f = &self.base;
        let residues = residues.iter().zip(&self.components).map(|(r, c)| r.rem(f, c).expect("monic")).collect();
        AlgebraElement { moduli: self.components.clone(), residues }
    }

    pub fn from_base(&self, c: &F::Elem) -> AlgebraElement<F::Elem> {
        self.element(&UniPoly::constant(&self.base, c.clone()))
    }

    pub fn one(&self) -> AlgebraElement<F::Elem> {
        self.from_base(&self.base.one())
    }

    pub fn generator(&self) -> AlgebraElement<F::Elem> {
        self.element(&UniPoly::x(&self.base))
    }

    /// Re-express an element on the current components.
    pub fn sync(&self, a: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        if a.moduli == self.components {
            return a.clone();
        }
        AlgebraElement {
            moduli: self.components.clone(),
            residues: self.components.iter().map(|c| a.residue_on(&self.base, c)).collect(),
        }
    }

    fn zip_with(
        &self,
        a: &AlgebraElement<F::Elem>,
        b: &AlgebraElement<F::Elem>,
        op: impl Fn(&UniPoly<F::Elem>, &UniPoly<F::Elem>, &UniPoly<F::Elem>) -> UniPoly<F::Elem>,
    ) -> AlgebraElement<F::Elem> {
        let (a, b) = (self.sync(a), self.sync(b));
        let residues = self.components.iter().zip(a.residues.iter().zip(&b.residues)).map(|(c, (x, y))| op(x, y, c)).collect();
        AlgebraElement { moduli: self.components.clone(), residues }
    }

    pub fn add(&self, a: &AlgebraElement<F::Elem>, b: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip_with(a, b, |x, y, _| x.add(&self.base, y))
    }

    pub fn sub(&self, a: &AlgebraElement<F::Elem>, b: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip_with(a, b, |x, y, _| x.sub(&self.base, y))
    }

    pub fn mul(&self, a: &AlgebraElement<F::Elem>, b: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip_with(a, b, |x, y, c| x.mul_mod(&self.base, y, c))
    }

    pub fn scale(&self, a: &AlgebraElement<F::Elem>, k: &F::Elem) -> AlgebraElement<F::Elem> {
        let a = self.sync(a);
        AlgebraElement { moduli: a.moduli, residues: a.residues.iter().map(|r| r.scale(&self.base, k)).collect() }
    }

    pub fn pow(&self, a: &AlgebraElement<F::Elem>, e: u64) -> AlgebraElement<F::Elem> {
        let mut acc = self.one();
        let mut base = self.sync(a);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluate a polynomial with base coefficients at an algebra element.
    pub fn eval_poly(&self, p: &UniPoly<F::Elem>, a: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let mut acc = self.element(&UniPoly::zero());
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.from_base(c));
        }
        acc
    }

    pub fn is_zero(&self, a: &AlgebraElement<F::Elem>) -> bool {
        self.sync(a).residues.iter().all(|r| r.is_zero())
    }

    fn record_split(&mut self, idx: usize, left: UniPoly<F::Elem>, note: &str) {
        let f = &self.base;
        let parent = self.components[idx].clone();
        let right = parent.div_rem(f, &left).expect("monic").0.monic(f);
        self.splits.push(SplitEvent { parent, left: left.clone(), right: right.clone(), note: note.to_string() });
        self.components.splice(idx..=idx, [left, right]);
    }

    /// Inverse on the components where `a` is a unit, zero elsewhere, after
    /// splitting the algebra along `a`. Also returns the indices of the
    /// components on which `a` vanishes.
    pub fn invert_or_split(&mut self, a: &AlgebraElement<F::Elem>) -> Result<(AlgebraElement<F::Elem>, Vec<usize>), EtaleError> {
        let f = self.base.clone();
        let mut i = 0;
        while i < self.components.len() {
            let r = a.residue_on(&f, &self.components[i]);
            if !r.is_zero() {
                let g = r.gcd(&f, &self.components[i]);
                if g.deg() > 0 && g.deg() < self.components[i].deg() {
                    self.record_split(i, g, "gcd with the element during inversion");
                    continue;
                }
            }
            i += 1;
        }
        let mut zeros = Vec::new();
        let mut residues = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let r = a.residue_on(&f, c);
            if r.is_zero() {
                zeros.push(k);
                residues.push(UniPoly::zero());
            } else {
                let (_, s, _) = r.ext_gcd(&f, c);
                residues.push(s.rem(&f, c)?);
            }
        }
        if zeros.len() == self.components.len() {
            return Err(EtaleError::ZeroElement);
        }
        Ok((AlgebraElement { moduli: self.components.clone(), residues }, zeros))
    }

    /// Inverse of a unit; splits as needed and fails on zero divisors.
    pub fn invert(&mut self, a: &AlgebraElement<F::Elem>) -> Result<AlgebraElement<F::Elem>, EtaleError> {
        let (inv, zeros) = self.invert_or_split(a)?;
        if zeros.is_empty() {
            Ok(inv)
        } else {
            Err(EtaleError::ZeroDivisor)
        }
    }

    /// Adopt splits discovered elsewhere (e.g. by [`dynamic_eval`]).
    pub fn refine(&mut self, events: &[SplitEvent<F::Elem>]) {
        for ev in events {
            if let Some(idx) = self.components.iter().position(|c| *c == ev.parent) {
                self.record_split(idx, ev.left.clone(), &ev.note);
            }
        }
    }

    /// Run a computation on every component with dynamic evaluation, adopting
    /// any splits it discovers. Results follow the refined component order.
    pub fn run_dynamic<T>(&mut self, mut f: impl FnMut(&DynamicField<F>) -> T) -> Vec<T> {
        let mut out = Vec::new();
        let mut all_events = Vec::new();
        for c in self.components.clone() {
            let (res, events) = dynamic_eval(&self.base, &c, &mut f);
            all_events.extend(events);
            out.extend(res.into_iter().map(|(_, t)| t));
        }
        self.refine(&all_events);
        out
    }

    /// Power sums `Tr(t^k)`, `k < deg c`, of one component by Newton's
    /// identities (no divisions).
    fn power_sums(&self, c: &UniPoly<F::Elem>) -> Vec<F::Elem> {
        let f = &self.base;
        let n = c.deg();
        let co = c.coeffs();
        let mut p = vec![f.from_i64(n as i64)];
        for k in 1..n {
            let mut acc = f.mul(&f.from_i64(k as i64), &co[n - k]);
            for j in 1..k {
                acc = f.add(&acc, &f.mul(&co[n - j], &p[k - j]));
            }
            p.push(f.neg(&acc));
        }
        p
    }

    pub fn trace(&self, a: &AlgebraElement<F::Elem>) -> F::Elem {
        let f = &self.base;
        let a = self.sync(a);
        let mut acc = f.zero();
        for (c, r) in self.components.iter().zip(&a.residues) {
            let p = self.power_sums(c);
            for (coef, pk) in r.coeffs().iter().zip(&p) {
                acc = f.add(&acc, &f.mul(coef, pk));
            }
        }
        acc
    }

    /// Norm as the product of `Res(g_i, a_i)`.
    pub fn norm(&self, a: &AlgebraElement<F::Elem>) -> F::Elem {
        let f = &self.base;
        let a = self.sync(a);
        let mut acc = f.one();
        for (c, r) in self.components.iter().zip(&a.residues) {
            if r.is_zero() {
                return f.zero();
            }
            acc = f.mul(&acc, &c.resultant(f, r).expect("nonzero inputs"));
        }
        acc
    }

    /// Block-diagonal Gram matrix `Tr(a t^(i+j))` of the transfer of `<a>`.
    pub fn trace_form(&mut self, a: &AlgebraElement<F::Elem>) -> Result<Matrix<F::Elem>, EtaleError> {
        let f = self.base.clone();
        let a = self.sync(a);
        for (c, r) in self.components.iter().zip(&a.residues) {
            if r.is_zero() || r.gcd(&f, c).deg() > 0 {
                return Err(EtaleError::ZeroDivisor);
            }
        }
        let n = self.degree();
        let mut g = Matrix::zeros(&f, n, n);
        let mut offset = 0;
        for (c, r) in self.components.iter().zip(&a.residues) {
            let d = c.deg();
            let p = self.power_sums(c);
            let tr = |x: &UniPoly<F::Elem>| x.coeffs().iter().zip(&p).fold(f.zero(), |acc, (u, v)| f.add(&acc, &f.mul(u, v)));
            let mut cur = r.clone();
            let mut traces = Vec::with_capacity(2 * d);
            for _ in 0..(2 * d - 1) {
                traces.push(tr(&cur));
                cur = cur.shift(&f, 1).rem(&f, c)?;
            }
            for i in 0..d {
                for j in 0..d {
                    g.set(offset + i, offset + j, traces[i + j].clone());
                }
            }
            offset += d;
        }
        Ok(g)
    }

    /// Coordinates in the basis `(t^k)` of each component, concatenated.
    pub fn coordinates(&self, a: &AlgebraElement<F::Elem>) -> Vec<F::Elem> {
        let a = self.sync(a);
        let mut out = Vec::with_capacity(self.degree());
        for (c, r) in self.components.iter().zip(&a.residues) {
            for k in 0..c.deg() {
                out.push(r.coeff(&self.base, k));
            }
        }
        out
    }

    /// Monic minimal polynomial of `a` by a Krylov dependency; valid in any
    /// characteristic.
    pub fn minimal_polynomial(&self, a: &AlgebraElement<F::Elem>) -> UniPoly<F::Elem> {
        let f = &self.base;
        let n = self.degree();
        let mut powers = vec![self.coordinates(&self.one())];
        let mut cur = self.one();
        for _ in 1..=n {
            cur = self.mul(&cur, a);
            powers.push(self.coordinates(&cur));
        }
        // In reduced echelon form the first free column only depends on
        // earlier pivots, so its kernel vector is the minimal dependency.
        let m = Matrix::from_rows((0..n).map(|row| powers.iter().map(|v| v[row].clone()).collect()).collect());
        if let Some(v) = m.kernel(f).first() {
            return UniPoly::new(f, v.clone()).monic(f);
        }
        unreachable!("a dependency exists among n + 1 vectors")
    }

    /// Express `b` as a polynomial in a primitive element `a`.
    pub fn express_in(&self, a: &AlgebraElement<F::Elem>, b: &AlgebraElement<F::Elem>) -> Result<UniPoly<F::Elem>, EtaleError> {
        let f = &self.base;
        let n = self.degree();
        let mut cols = vec![self.coordinates(&self.one())];
        let mut cur = self.one();
        for _ in 1..n {
            cur = self.mul(&cur, a);
            cols.push(self.coordinates(&cur));
        }
        let m = Matrix::from_rows((0..n).map(|row| cols.iter().map(|v| v[row].clone()).collect()).collect());
        let sol = m.solve(f, &self.coordinates(b)).ok_or(EtaleError::NotPrimitive)?;
        Ok(UniPoly::new(f, sol))
    }
}
