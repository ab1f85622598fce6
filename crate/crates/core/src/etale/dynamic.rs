//! Dynamic evaluation: compute in K[t]/(g) as if it were a field and split
//! the modulus when a zero divisor turns up.

use std::cell::RefCell;
use std::rc::Rc;


use crate::field::Field;
use crate::poly::UniPoly;

/// A modulus `g` found to factor as `left * right` during a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent<E> {
    pub parent: UniPoly<E>,
    pub left: UniPoly<E>,
    pub right: UniPoly<E>,
    pub note: String,
}

/// K[t]/(g) presented as a field.
///
/// When an inversion meets a nontrivial `gcd(a, g)`, the factorization is
/// recorded and the object becomes poisoned: from then on every element
/// reads as zero and inverts to zero, so generic algorithms terminate
/// quickly. The driver [`dynamic_eval`] discards such runs and restarts on
/// each factor.
#[derive(Clone, Debug)]
pub struct DynamicField<F: Field> {
    base: F,
    modulus: UniPoly<F::Elem>,
    split: Rc<RefCell<Option<(UniPoly<F::Elem>, UniPoly<F::Elem>)>>>,
}

impl<F: Field> DynamicField<F> {
    /// `modulus` must be monic and squarefree of degree at least one.
    pub fn new(base: F, modulus: UniPoly<F::Elem>) -> Self {
        DynamicField { base, modulus, split: Rc::new(RefCell::new(None)) }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &UniPoly<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn is_poisoned(&self) -> bool {
        self.split.borrow().is_some()
    }

    pub fn take_split(&self) -> Option<(UniPoly<F::Elem>, UniPoly<F::Elem>)> {
        self.split.borrow_mut().take()
    }

    pub fn embed(&self, c: &F::Elem) -> UniPoly<F::Elem> {
        UniPoly::constant(&self.base, c.clone())
    }

    /// The class of `t`.
    pub fn generator(&self) -> UniPoly<F::Elem> {
        self.reduce(&UniPoly::x(&self.base))
    }

    pub fn reduce(&self, p: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        p.rem(&self.base, &self.modulus).expect("monic modulus")
    }

    fn record(&self, g: UniPoly<F::Elem>) {
        let (other, _) = self.modulus.div_rem(&self.base, &g).expect("monic factor");
        let mut slot = self.split.borrow_mut();
        if slot.is_none() {
            *slot = Some((g, other.monic(&self.base)));
        }
    }
}

impl<F: Field> Field for DynamicField<F> {
    type Elem = UniPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        UniPoly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.reduce(&UniPoly::one(&self.base))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.reduce(&UniPoly::constant(&self.base, self.base.from_i64(n)))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&a.mul(&self.base, b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.is_poisoned() || a.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        if self.is_poisoned() {
            return Some(UniPoly::zero());
        }
        let (g, s, _) = a.ext_gcd(&self.base, &self.modulus);
        if g.deg() == 0 {
            Some(self.reduce(&s))
        } else {
            self.record(g);
            Some(UniPoly::zero())
        }
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

/// Run `f` over K[t]/(g) with dynamic evaluation. Returns one result per
/// final component, in a deterministic order (left factors first), and the
/// splits that were discovered.
#[allow(clippy::type_complexity)]
pub fn dynamic_eval<F: Field, T>(
    base: &F,
    modulus: &UniPoly<F::Elem>,
    mut f: impl FnMut(&DynamicField<F>) -> T,
) -> (Vec<(UniPoly<F::Elem>, T)>, Vec<SplitEvent<F::Elem>>) {
    let mut pending = vec![modulus.monic(base)];
    let mut done = Vec::new();
    let mut events = Vec::new();
    while let Some(m) = pending.pop() {
        let field = DynamicField::new(base.clone(), m.clone());
        let out = f(&field);
        match field.take_split() {
            None => done.push((m, out)),
            Some((left, right)) => {
                events.push(SplitEvent {
                    parent: m,
                    left: left.clone(),
                    right: right.clone(),
                    note: "zero divisor met during inversion".to_string(),
                });
                pending.push(right);
                pending.push(left);
            }
        }
    }
    (done, events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn gcd_over_split_algebra() {
        // In Q[t]/(t^2 - 1), gcd(y - t, y - 1) is y - 1 on t = 1 and 1 on t = -1.
        let m = UniPoly::from_i64(&Q, &[-1, 0, 1]);
        let (res, events) = dynamic_eval(&Q, &m, |k| {
            let t = k.generator();
            let a = UniPoly::new(k, vec![k.neg(&t), k.one()]);
            let b = UniPoly::new(k, vec![k.from_i64(-1), k.one()]);
            a.gcd(k, &b).deg()
        });
        assert_eq!(events.len(), 1);
        let mut degs: Vec<(i64, usize)> = res
            .iter()
            .map(|(m, d)| {
                let root = Q.neg(&m.coeffs()[0]);
                (if root == Q.one() { 1 } else { -1 }, *d)
            })
            .collect();
        degs.sort();
        assert_eq!(degs, vec![(-1, 0), (1, 1)]);
    }
}
