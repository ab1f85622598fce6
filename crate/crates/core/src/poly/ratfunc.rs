//! The rational function field K(s) as a ring object.

use crate::field::Field;

use super::UniPoly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction<E> {
    pub num: UniPoly<E>,
    pub den: UniPoly<E>,
}

/// K(s) over a base field K.
#[derive(Clone, Debug)]
pub struct RationalFunctionField<F: Field> {
    base: F,
}

/// A place of K(s) of degree one: `s = a` or `s = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionPlace<E> {
    At(E),
    Infinity,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F) -> Self {
        RationalFunctionField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// The transcendental `s`.
    pub fn variable(&self) -> RationalFunction<F::Elem> {
        self.from_poly(UniPoly::x(&self.base))
    }

    pub fn from_poly(&self, p: UniPoly<F::Elem>) -> RationalFunction<F::Elem> {
        RationalFunction { num: p, den: UniPoly::one(&self.base) }
    }

    pub fn from_base(&self, c: F::Elem) -> RationalFunction<F::Elem> {
        self.from_poly(UniPoly::constant(&self.base, c))
    }

    pub fn fraction(&self, num: UniPoly<F::Elem>, den: UniPoly<F::Elem>) -> Option<RationalFunction<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        Some(self.normalize(num, den))
    }

    fn normalize(&self, num: UniPoly<F::Elem>, den: UniPoly<F::Elem>) -> RationalFunction<F::Elem> {
        let f = &self.base;
        if num.is_zero() {
            return RationalFunction { num, den: UniPoly::one(f) };
        }
        if den.deg() == 0 {
            let inv = f.inv(den.lc().unwrap()).expect("nonzero constant denominator");
            return RationalFunction { num: num.scale(f, &inv), den: UniPoly::one(f) };
        }
        let g = if num.deg() == 0 { UniPoly::one(f) } else { num.gcd(f, &den) };
        let (num, den) = if g.deg() > 0 {
            (num.div_rem(f, &g).unwrap().0, den.div_rem(f, &g).unwrap().0)
        } else {
            (num, den)
        };
        let inv = f.inv(den.lc().unwrap()).expect("nonzero leading coefficient");
        RationalFunction { num: num.scale(f, &inv), den: den.scale(f, &inv) }
    }

    /// Order of vanishing and the leading unit coefficient at a place.
    /// Returns `None` for the zero function.
    pub fn expand_at(&self, r: &RationalFunction<F::Elem>, place: &FunctionPlace<F::Elem>) -> Option<(i64, F::Elem)> {
        let f = &self.base;
        if r.num.is_zero() {
            return None;
        }
        match place {
            FunctionPlace::Infinity => {
                let v = r.den.deg() as i64 - r.num.deg() as i64;
                let u = f.div(r.num.lc().unwrap(), r.den.lc().unwrap()).unwrap();
                Some((v, u))
            }
            FunctionPlace::At(a) => {
                let lin = UniPoly::new(f, vec![f.neg(a), f.one()]);
                let strip = |p: &UniPoly<F::Elem>| {
                    let mut p = p.clone();
                    let mut k = 0i64;
                    loop {
                        let (q, rem) = p.div_rem(f, &lin).unwrap();
                        if !rem.is_zero() {
                            return (k, p.eval(f, a));
                        }
                        p = q;
                        k += 1;
                    }
                };
                let (vn, un) = strip(&r.num);
                let (vd, ud) = strip(&r.den);
                Some((vn - vd, f.div(&un, &ud).unwrap()))
            }
        }
    }

    /// Value at `s = a`, if finite.
    pub fn eval(&self, r: &RationalFunction<F::Elem>, a: &F::Elem) -> Option<F::Elem> {
        let d = r.den.eval(&self.base, a);
        self.base.div(&r.num.eval(&self.base, a), &d)
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RationalFunction<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(UniPoly::zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.den == b.den {
            return self.normalize(a.num.add(f, &b.num), a.den.clone());
        }
        let num = a.num.mul(f, &b.den).add(f, &b.num.mul(f, &a.den));
        self.normalize(num, a.den.mul(f, &b.den))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        self.normalize(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RationalFunction { num: a.num.neg(&self.base), den: a.den.clone() }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.normalize(a.den.clone(), a.num.clone()))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}
