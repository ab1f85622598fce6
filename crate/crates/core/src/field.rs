//! Ring-object abstraction shared by every exact computation in the crate.
//!
//! Elements never carry their own arithmetic context; a `Field` value (the
//! "ring object") performs all operations. This lets the same polynomial and
//! linear-algebra code run over ℚ, 𝔽_p, finite extensions of 𝔽_p, rational
//! function fields and the dynamically split components of an étale algebra.

use std::fmt::Debug;

/// A commutative field presented as a ring object.
///
/// `is_zero` and `inv` must agree: whenever `is_zero(a)` is false, `inv(a)`
/// returns `Some`. Component rings of étale algebras may answer
/// conservatively after discovering a zero divisor (see
/// [`crate::etale::DynamicField`]); generic algorithms therefore never panic on
/// arithmetic answers, they only rely on this contract.
pub trait Field: Clone + Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
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

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// Image under a reduction map to 𝔽_p, when the field has one and `a`
    /// is integral at `p`. Used only to shortcut coprimality tests.
    fn reduce_mod(&self, _a: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }

    /// Product of coefficient vectors (lowest degree first), when the field
    /// has a faster route than the generic schoolbook loop.
    fn poly_mul(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Remainder of `a` by `d` (both nonzero, lowest degree first), when the
    /// field has a faster route than generic long division.
    fn poly_rem(&self, _a: &[Self::Elem], _d: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Embedding of ℚ, when the field has characteristic zero and supports it.
    fn lift_rational(&self, _q: &num_rational::BigRational) -> Option<Self::Elem> {
        None
    }
}

/// Fields in which squareness of an element is decidable.
pub trait SquareTest: Field {
    /// True iff `a` is a square (zero counts as a square).
    fn is_square(&self, a: &Self::Elem) -> bool;

    /// True iff `a / b` is a nonzero square. Both arguments must be nonzero.
    fn same_square_class(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match self.div(a, b) {
            Some(q) if !self.is_zero(&q) => self.is_square(&q),
            _ => false,
        }
    }
}
