//! Sparse Laurent polynomials with big-integer coefficients.
//!
//! Terms are kept sorted by exponent vector (lexicographic, first variable
//! most significant) with no zero coefficients, so structural equality is
//! polynomial equality and serialization is canonical.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial. The derived ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn checked_pow(&self, k: i64) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }
}

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Vars,
    terms: Vec<(Monomial, BigInt)>,
}

fn from_map(vars: Vars, map: HashMap<Monomial, BigInt>) -> LaurentPolynomial {
    let mut terms: Vec<(Monomial, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    LaurentPolynomial { vars, terms }
}

impl LaurentPolynomial {
    pub fn zero(vars: Vars) -> Self {
        LaurentPolynomial { vars, terms: Vec::new() }
    }

    pub fn constant(vars: Vars, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let n = vars.len();
        let terms = if c.is_zero() { vec![] } else { vec![(Monomial::one(n), c)] };
        LaurentPolynomial { vars, terms }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, 1)
    }

    /// `c * x^exps`.
    pub fn monomial(vars: Vars, exps: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length must match context");
        let c = c.into();
        let terms = if c.is_zero() { vec![] } else { vec![(Monomial(exps), c)] };
        LaurentPolynomial { vars, terms }
    }

    /// The `i`-th variable.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut map: HashMap<Monomial, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match context");
            *map.entry(Monomial(e)).or_default() += c;
        }
        from_map(vars, map)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Self::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0 .0.iter().all(|&e| e == 0)
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        match self.terms.binary_search_by(|(m, _)| m.0.as_slice().cmp(exps)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.vars.as_ref(),
                other.vars.as_ref()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(LaurentPolynomial { vars: self.vars.clone(), terms: out })
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &[i64]) -> Result<Self> {
        let m = Monomial(exps.to_vec());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.checked_mul(&m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPolynomial { vars: self.vars.clone(), terms })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.shift(&m.0)?.scale(c));
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut map: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len().saturating_mul(other.terms.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let prod = ca * cb;
                match map.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        map.insert(m, prod);
                    }
                }
            }
        }
        Ok(from_map(self.vars.clone(), map))
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.vars.clone()));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let kk = i64::try_from(k).map_err(|_| Error::ExponentOverflow)?;
            return Ok(LaurentPolynomial {
                vars: self.vars.clone(),
                terms: vec![(m.checked_pow(kk)?, num_traits::pow(c.clone(), k as usize))],
            });
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("k > 0"))
    }

    /// Per-variable (min, max) exponents; `None` for the zero polynomial.
    pub fn degree_bounds(&self) -> Option<Vec<(i64, i64)>> {
        let first = self.terms.first()?;
        let mut b: Vec<(i64, i64)> = first.0 .0.iter().map(|&e| (e, e)).collect();
        for (m, _) in &self.terms[1..] {
            for (slot, &e) in b.iter_mut().zip(&m.0) {
                slot.0 = slot.0.min(e);
                slot.1 = slot.1.max(e);
            }
        }
        Some(b)
    }

    /// Exact division. Fails with `NotDivisible` when `den` does not divide `self`
    /// in the Laurent polynomial ring.
    ///
    /// Long division against the lex-leading term of `den`. Since lex order and
    /// per-variable degree ranges are multiplicative, every quotient monomial lies
    /// in the box `[min(num) - min(den), max(num) - max(den)]` and is lex-above
    /// `least(num) / least(den)`; leaving that region means a nonzero remainder.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        self.check_ctx(den)?;
        if den.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if den.terms.len() == 1 {
            let (m, c) = &den.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, k) in &self.terms {
                let (q, r) = k.div_rem(c);
                if !r.is_zero() {
                    return Err(Error::NotDivisible(format!("coefficient {k} by {c}")));
                }
                terms.push((e.checked_div(m)?, q));
            }
            return Ok(LaurentPolynomial { vars: self.vars.clone(), terms });
        }
        let nb = self.degree_bounds().expect("nonzero");
        let db = den.degree_bounds().expect("nonzero");
        let mut lo = Vec::with_capacity(nb.len());
        let mut hi = Vec::with_capacity(nb.len());
        for (n, d) in nb.iter().zip(&db) {
            lo.push(n.0.checked_sub(d.0).ok_or(Error::ExponentOverflow)?);
            hi.push(n.1.checked_sub(d.1).ok_or(Error::ExponentOverflow)?);
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::NotDivisible("degree ranges incompatible".into()));
        }
        let least = self.terms[0].0.checked_div(&den.terms[0].0)?;
        let (lead_m, lead_c) = den.terms.last().expect("nonzero");
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lead_m)?;
            if qm < least || qm.0.iter().zip(lo.iter().zip(&hi)).any(|(e, (l, h))| e < l || e > h) {
                return Err(Error::NotDivisible("nonzero remainder".into()));
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible("coefficient not divisible".into()));
            }
            for (dm, dc) in &den.terms[..den.terms.len() - 1] {
                let t = qm.checked_mul(dm)?;
                let prod = &qc * dc;
                match rem.get_mut(&t) {
                    Some(v) => {
                        *v -= prod;
                        if v.is_zero() {
                            rem.remove(&t);
                        }
                    }
                    None => {
                        rem.insert(t, -prod);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Ok(LaurentPolynomial { vars: self.vars.clone(), terms: quotient })
    }

    /// Replaces variable `i` by `images[i]`; all images share the target context.
    /// Negative powers of non-monomial images are handled by one exact division.
    pub fn substitute(&self, images: &[LaurentPolynomial]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if im.vars != target {
                return Err(Error::ContextMismatch("substitution images disagree".into()));
            }
            if im.is_zero() {
                return Err(Error::InvalidArgument("substitution image is zero".into()));
            }
        }
        if self.is_zero() {
            return Ok(Self::zero(target));
        }
        let bounds = self.degree_bounds().expect("nonzero");
        // Shift so that every non-monomial image appears with a nonnegative power.
        let shift: Vec<i64> = bounds
            .iter()
            .zip(images)
            .map(|(b, im)| if im.len() > 1 && b.0 < 0 { -b.0 } else { 0 })
            .collect();
        let mut cache: HashMap<(usize, i64), LaurentPolynomial> = HashMap::new();
        let mut power = |i: usize, e: i64| -> Result<LaurentPolynomial> {
            if let Some(p) = cache.get(&(i, e)) {
                return Ok(p.clone());
            }
            let im = &images[i];
            let p = if e >= 0 {
                im.pow(e as u64)?
            } else {
                let (m, c) = &im.terms[0];
                let inv = m.checked_pow(e)?;
                if !(c.is_one() || (-c).is_one()) {
                    return Err(Error::NotDivisible("negative power of non-unit monomial".into()));
                }
                let c = if e % 2 == 0 { BigInt::one() } else { c.clone() };
                LaurentPolynomial { vars: target.clone(), terms: vec![(inv, c)] }
            };
            cache.insert((i, e), p.clone());
            Ok(p)
        };
        let mut acc = LaurentPolynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = LaurentPolynomial::constant(target.clone(), c.clone());
            for (i, (&e, &s)) in m.0.iter().zip(&shift).enumerate() {
                let e = e.checked_add(s).ok_or(Error::ExponentOverflow)?;
                if e != 0 {
                    t = t.mul(&power(i, e)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        let mut den = LaurentPolynomial::one(target.clone());
        for (i, &s) in shift.iter().enumerate() {
            if s > 0 {
                den = den.mul(&power(i, s)?)?;
            }
        }
        if den.is_one() {
            Ok(acc)
        } else {
            acc.div_exact(&den)
        }
    }

    /// Minimum stored coefficient; `None` stands for +infinity (zero polynomial).
    pub fn min_coefficient(&self) -> Option<BigInt> {
        self.terms.iter().map(|(_, c)| c).min().cloned()
    }

    /// Sum of coefficients, i.e. the value at all variables equal to 1.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Re-expresses the polynomial in another context. `map[i]` gives the target
    /// index of source variable `i`, or `None` to set that variable to 1.
    pub fn remap(&self, target: Vars, map: &[Option<usize>]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0i64; n];
            for (src, dst) in map.iter().enumerate() {
                if let Some(d) = dst {
                    e[*d] += m.0[src];
                }
            }
            (e, c.clone())
        });
        Self::from_terms(target, terms)
    }

    /// Splits off the largest monomial dividing every term (per-variable minimum)
    /// so that `self = x^min * rest` with `rest` a polynomial.
    pub fn split_denominator(&self) -> (Vec<i64>, Self) {
        match self.degree_bounds() {
            None => (vec![0; self.nvars()], self.clone()),
            Some(b) => {
                let mins: Vec<i64> = b.iter().map(|x| x.0).collect();
                let neg: Vec<i64> = mins.iter().map(|m| -m).collect();
                (mins, self.shift(&neg).expect("shift back into range"))
            }
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { exp: m.0.clone(), coef: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let vars: Vars = j.vars.clone().into();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(Error::Parse(format!("term exponent length {} != {}", t.exp.len(), vars.len())));
            }
            let c: BigInt = t.coef.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coef)))?;
            terms.push((t.exp.clone(), c));
        }
        Ok(Self::from_terms(vars, terms))
    }

    /// Compact canonical JSON string.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    /// Parses the pretty format, e.g. `x2^24 + 8*x2^21 - 3*x1^-1*z3^2 + 1`.
    /// Variable names must belong to `vars`.
    pub fn parse(vars: Vars, s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() || src == "0" {
            return Ok(Self::zero(vars));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let bytes: Vec<char> = src.chars().collect();
        for (i, &ch) in bytes.iter().enumerate() {
            let after_caret = i > 0 && bytes[i - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((neg, cur));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut c = BigInt::one();
            let mut e = vec![0i64; vars.len()];
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {piece:?}")));
                }
                if factor.chars().all(|ch| ch.is_ascii_digit()) {
                    c *= factor.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, x)) => (n, x.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {x:?}")))?),
                    None => (factor, 1),
                };
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                e[idx] = e[idx].checked_add(exp).ok_or(Error::ExponentOverflow)?;
            }
            if neg {
                c = -c;
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(vars, terms))
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Pretty form, terms in the same lexicographic order as the JSON form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Free-function spellings of the core operations.
pub fn lp_add(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    a.add(b)
}

pub fn lp_mul(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    a.mul(b)
}

pub fn lp_div_exact(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    num.div_exact(den)
}

pub fn lp_substitute(p: &LaurentPolynomial, images: &[LaurentPolynomial]) -> Result<LaurentPolynomial> {
    p.substitute(images)
}

pub fn lp_min_coefficient(p: &LaurentPolynomial) -> Option<BigInt> {
    p.min_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Vars {
        vars(&["x1", "x2", "z3"])
    }

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(ctx(), s).unwrap()
    }

    #[test]
    fn add_cancels_and_merges() {
        assert_eq!(p("x1 + 1").add(&p("-1")).unwrap(), p("x1"));
        assert_eq!(p("x2^3 + 1").add(&p("x2^3")).unwrap(), p("2*x2^3 + 1"));
        assert_eq!(p("x1").add(&LaurentPolynomial::zero(ctx())).unwrap(), p("x1"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = LaurentPolynomial::parse(vars(&["a"]), "a").unwrap();
        assert!(matches!(p("x1").add(&other), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn mul_basics() {
        assert_eq!(p("x1^-1").mul(&p("x1")).unwrap(), p("1"));
        assert_eq!(p("1 + x2^3").pow(2).unwrap(), p("1 + 2*x2^3 + x2^6"));
        let big = LaurentPolynomial::monomial(ctx(), vec![i64::MAX, 0, 0], 1);
        assert_eq!(big.mul(&p("x1 + x2")), Err(Error::ExponentOverflow));
    }

    #[test]
    fn division() {
        assert_eq!(p("x2^2 - 1").div_exact(&p("x2 - 1")).unwrap(), p("x2 + 1"));
        assert_eq!(p("x2^3 + 1").div_exact(&p("x1")).unwrap(), p("x1^-1*x2^3 + x1^-1"));
        assert!(matches!(p("x2^2 + 1").div_exact(&p("x2 + 1")), Err(Error::NotDivisible(_))));
        assert!(matches!(p("1").div_exact(&p("1 + x1")), Err(Error::NotDivisible(_))));
        assert!(matches!(p("x1 + 1").div_exact(&p("2")), Err(Error::NotDivisible(_))));
        // Laurent quotient with negative exponents in a non-monomial denominator
        let q = p("x1^-2 + x2*z3^-1");
        let d = p("x1 + x2^-1 + z3");
        assert_eq!(q.mul(&d).unwrap().div_exact(&d).unwrap(), q);
    }

    #[test]
    fn substitution_of_exchange_relation() {
        // x3 -> (x2^2 + z3^2)/x1 inside x3^2 + z3^2, then divide by x2
        let c = vars(&["x1", "x2", "x3", "z3"]);
        let src = LaurentPolynomial::parse(c, "x3^2 + z3^2").unwrap();
        let x3 = p("x1^-1*x2^2 + x1^-1*z3^2");
        let im = [p("x1"), p("x2"), x3, p("z3")];
        let x4 = src.substitute(&im).unwrap().div_exact(&p("x2")).unwrap();
        assert_eq!(x4, p("x1^-2*x2^3 + 2*x1^-2*x2*z3^2 + x1^-2*x2^-1*z3^4 + x2^-1*z3^2"));
        // negative power of a non-monomial image
        let c2 = vars(&["u"]);
        let src = LaurentPolynomial::parse(c2, "u^-1 + u").unwrap();
        let r = src.substitute(&[p("x1 + 1")]);
        assert!(matches!(r, Err(Error::NotDivisible(_))));
    }

    #[test]
    fn min_coefficient_and_display() {
        assert_eq!(p("x1 + 2").min_coefficient(), Some(BigInt::from(1)));
        assert_eq!(p("x1 - x2").min_coefficient(), Some(BigInt::from(-1)));
        assert_eq!(LaurentPolynomial::zero(ctx()).min_coefficient(), None);
        let q = p("3*x1^-2*z3 - x2 + 1");
        assert_eq!(q.to_string(), "3*x1^-2*z3 + 1 - x2");
        assert_eq!(LaurentPolynomial::parse(ctx(), &q.to_string()).unwrap(), q);
    }

    #[test]
    fn json_is_canonical() {
        let q = p("x2 + 7*x1^-1 + 123456789012345678901234567890");
        let s = q.to_json_string();
        assert_eq!(
            s,
            r#"{"vars":["x1","x2","z3"],"terms":[{"exp":[-1,0,0],"coef":"7"},{"exp":[0,0,0],"coef":"123456789012345678901234567890"},{"exp":[0,1,0],"coef":"1"}]}"#
        );
        assert_eq!(LaurentPolynomial::from_json_str(&s).unwrap(), q);
    }
}
