//! Arithmetic on certified values and the bookkeeping of one evaluation.

use std::cell::RefCell;
use std::collections::BTreeMap;

use iterated_sums::{Exp, SumSpec, Sym};
use padic_core::{Zq, ZqElem};

use crate::engine::{ingredient, Ingredient, Ladder, Mzv, MzvValue};
use crate::MzvError;

/// A value next to a copy truncated to its certified digits.  Every operation
/// is applied to both, so the precision of the copy is the certificate of the
/// result.
#[derive(Clone, Copy, Debug)]
pub struct Cv {
    pub value: ZqElem,
    pub certified: ZqElem,
}

impl Cv {
    pub fn exact(v: ZqElem) -> Self {
        Cv { value: v, certified: v }
    }

    pub fn with_cert(v: ZqElem, cert: i32) -> Self {
        Cv { value: v, certified: v.with_prec(cert) }
    }

    pub fn cert(&self) -> i32 {
        self.certified.prec()
    }
}

pub(crate) struct Calc<'a> {
    pub z: &'a Mzv,
    pub ring: &'a Zq,
    ingredients: RefCell<BTreeMap<String, Ingredient>>,
    provenance: RefCell<Vec<String>>,
}

impl<'a> Calc<'a> {
    pub fn new(z: &'a Mzv, name: &str) -> Self {
        Calc {
            z,
            ring: z.ring(),
            ingredients: RefCell::new(BTreeMap::new()),
            provenance: RefCell::new(vec![name.to_string()]),
        }
    }

    fn record(&self, spec: &SumSpec, ladder: Ladder) -> Result<Cv, MzvError> {
        let r = self.z.limit(spec, ladder)?;
        let ing = ingredient(spec, ladder, &r);
        if ing.certified_digits < self.z.floor() {
            return Err(MzvError::Uncertified { what: ing.name, digits: ing.certified_digits });
        }
        self.ingredients.borrow_mut().insert(ing.name.clone(), ing);
        Ok(Cv::with_cert(r.value, r.certified_digits))
    }

    /// The limit `X^(sup)(exps; idx; alpha)` along `q^N`.  The superscript
    /// counts toward the weight: the limit of `F^(sup)` is multiplied by
    /// `p^sup`, so `S(.., (c))` contributes `X^(c)` with no stray power of `p`.
    pub fn x(&self, exps: &[Exp], idx: &[i64], alpha: &[Sym], sup: u32) -> Result<Cv, MzvError> {
        let spec = SumSpec::f(exps, idx).with_alpha(alpha).with_sup(sup);
        let v = self.record(&spec, Ladder::Q)?;
        let e = sup as i32;
        Ok(Cv { value: self.ring.mul_p_pow(&v.value, e), certified: self.ring.mul_p_pow(&v.certified, e) })
    }

    /// Depth one, `X^(r)(s; i)`.
    pub fn x1(&self, s: u32, i: i64, r: u32) -> Result<Cv, MzvError> {
        self.x(&[Exp::plain(s)], &[i], &[], r)
    }

    pub fn mp_limit(&self, spec: &SumSpec) -> Result<Cv, MzvError> {
        self.record(spec, Ladder::Mp)
    }

    /// Fold in the ingredients of a value computed separately.
    pub fn absorb(&self, v: &MzvValue) -> Cv {
        let mut ing = self.ingredients.borrow_mut();
        for i in &v.ingredients {
            ing.insert(i.name.clone(), i.clone());
        }
        self.provenance.borrow_mut().extend(v.provenance.iter().cloned());
        Cv::with_cert(v.value, v.certified_digits)
    }

    pub fn finish(self, v: Cv) -> MzvValue {
        let cap = self.ring.cap();
        MzvValue {
            value: v.value,
            certified_digits: v.cert().min(cap),
            provenance: self.provenance.into_inner(),
            ingredients: self.ingredients.into_inner().into_values().collect(),
        }
    }

    // ----- exact constants --------------------------------------------------

    pub fn int(&self, n: i64) -> Cv {
        Cv::exact(self.ring.from_i64(n))
    }

    pub fn zero(&self) -> Cv {
        Cv::exact(ZqElem::zero())
    }

    /// `zeta^(underbar(a) - underbar(b))`.
    pub fn zu(&self, a: i64, b: i64) -> Cv {
        Cv::exact(self.ring.zeta_pow(self.z.under(a) - self.z.under(b)))
    }

    /// `1 / (1 - zeta^(underbar(a) - underbar(b)))`, checked to be a unit.
    pub fn w(&self, a: i64, b: i64) -> Result<Cv, MzvError> {
        let d = self.ring.sub(&self.ring.one(), &self.zu(a, b).value);
        if d.valuation() != Some(0) {
            return Err(MzvError::Domain(format!("1 - zeta^({a}-{b}) is not a unit")));
        }
        Ok(Cv::exact(self.ring.inv(&d)?))
    }

    // ----- operations -------------------------------------------------------

    pub fn add(&self, a: Cv, b: Cv) -> Cv {
        Cv { value: self.ring.add(&a.value, &b.value), certified: self.ring.add(&a.certified, &b.certified) }
    }

    pub fn sub(&self, a: Cv, b: Cv) -> Cv {
        Cv { value: self.ring.sub(&a.value, &b.value), certified: self.ring.sub(&a.certified, &b.certified) }
    }

    pub fn neg(&self, a: Cv) -> Cv {
        Cv { value: self.ring.neg(&a.value), certified: self.ring.neg(&a.certified) }
    }

    pub fn mul(&self, a: Cv, b: Cv) -> Cv {
        Cv { value: self.ring.mul(&a.value, &b.value), certified: self.ring.mul(&a.certified, &b.certified) }
    }

    pub fn mul3(&self, a: Cv, b: Cv, c: Cv) -> Cv {
        self.mul(self.mul(a, b), c)
    }

    /// `(-1)^e a`.
    pub fn sign(&self, e: u32, a: Cv) -> Cv {
        if e % 2 == 0 {
            a
        } else {
            self.neg(a)
        }
    }

    pub fn scale(&self, a: Cv, n: i64) -> Cv {
        Cv { value: self.ring.mul_int(&a.value, n), certified: self.ring.mul_int(&a.certified, n) }
    }

    pub fn div_int(&self, a: Cv, n: i64) -> Result<Cv, MzvError> {
        Ok(Cv { value: self.ring.div_int(&a.value, n)?, certified: self.ring.div_int(&a.certified, n)? })
    }

    pub fn sum<I: IntoIterator<Item = Cv>>(&self, it: I) -> Cv {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }
}
