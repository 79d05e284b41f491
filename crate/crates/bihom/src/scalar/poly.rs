//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted by exponent vector in descending lexicographic
//! order, so the first term is the leading term. Zero coefficients are never
//! stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Exponents = Box<[u32]>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Exponents, BigRational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(vec![0; nvars].into_boxed_slice(), c)],
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The polynomial consisting of the single variable `index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Polynomial {
            nvars,
            terms: vec![(e.into_boxed_slice(), BigRational::one())],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must match variable count");
            *acc.entry(e.into_boxed_slice()).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Exponents, BigRational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<&(Exponents, BigRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn mul_term(&self, e: &[u32], c: &BigRational) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(f, d)| (f.iter().zip(e.iter()).map(|(x, y)| x + y).collect(), d * c))
                .collect(),
        }
    }

    /// Exact division: returns `Some(q)` with `self = q * divisor`, or `None`
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlead_e, dlead_c) = divisor.leading().expect("division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        for v in 0..self.nvars {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((le, lc)) = rem.leading() {
            if !le.iter().zip(dlead_e.iter()).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Vec<u32> = le.iter().zip(dlead_e.iter()).map(|(a, b)| a - b).collect();
            let qc = lc / dlead_c;
            rem = rem.sub(&divisor.mul_term(&qe, &qc));
            quotient.push((qe.into_boxed_slice(), qc));
        }
        Some(Polynomial {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Splits `self = c * p` where `p` has coprime integer coefficients and a
    /// positive leading coefficient. Panics on the zero polynomial.
    pub fn content_and_primitive(&self) -> (BigRational, Self) {
        assert!(!self.is_zero(), "content of the zero polynomial");
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_gcd(&self) -> Vec<u32> {
        let mut m: Vec<u32> = match self.terms.first() {
            Some((e, _)) => e.to_vec(),
            None => return vec![0; self.nvars],
        };
        for (e, _) in &self.terms[1..] {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn div_monomial(&self, m: &[u32]) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m.iter()).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars);
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Re-embeds this polynomial into a ring with `nvars` variables whose
    /// first variables coincide with the current ones.
    pub fn lift(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        if nvars == self.nvars {
            return self.clone();
        }
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.to_vec();
                    f.resize(nvars, 0);
                    (f.into_boxed_slice(), c.clone())
                })
                .collect(),
        }
    }

    /// Renders with the given variable names, leading term first.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }

    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn product_of_binomials_expands() {
        let p = x().add(&Polynomial::one(2));
        let m = x().sub(&Polynomial::one(2));
        let prod = p.mul(&m);
        let expected = x().mul(&x()).sub(&Polynomial::one(2));
        assert_eq!(prod, expected);
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = x().add(&y());
        let b = x().sub(&y().scale(&q(2)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(x().div_exact(&y()), None);
        assert_eq!(x().mul(&x()).add(&Polynomial::one(2)).div_exact(&x()), None);
    }

    #[test]
    fn primitive_part_is_integral_with_positive_lead() {
        let p = x()
            .scale(&BigRational::new((-4).into(), 3.into()))
            .add(&Polynomial::constant(2, q(2)));
        let (c, prim) = p.content_and_primitive();
        assert_eq!(c, BigRational::new((-2).into(), 3.into()));
        assert_eq!(prim, x().scale(&q(2)).sub(&Polynomial::constant(2, q(3))));
    }

    #[test]
    fn display_orders_terms() {
        let names = vec!["a".to_string(), "b".to_string()];
        let p = x()
            .mul(&x())
            .scale(&q(-1))
            .add(&y().scale(&q(2)))
            .sub(&Polynomial::one(2));
        assert_eq!(p.display(&names).to_string(), "-a^2 + 2*b - 1");
    }

    #[test]
    fn monomial_gcd_and_division() {
        let p = x().mul(&x()).mul(&y()).add(&x().mul(&y()).mul(&y()));
        assert_eq!(p.monomial_gcd(), vec![1, 1]);
        assert_eq!(p.div_monomial(&[1, 1]), x().add(&y()));
    }
}
