//! Truncated polynomial rings over Z/2.
//!
//! A [`GradedRing`] presents `Z2[g_1, ..., g_m] / (g_1^{d_1}, ..., g_m^{d_m})`
//! with a positive degree per generator. This covers `H*(RP^n)`, `H*(CP^n)`
//! and finite tensor products of them, which is all the characteristic class
//! computations need.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// `g^truncation = 0`.
    pub truncation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRing {
    generators: Vec<Generator>,
    top_degree: u32,
}

impl GradedRing {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Self>> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.degree == 0 || g.truncation == 0 {
                return Err(Error::InvalidRing(format!(
                    "generator `{}` needs degree >= 1 and truncation >= 1",
                    g.name
                )));
            }
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("bad generator name `{}`", g.name)));
            }
            if g.name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidRing(format!(
                    "generator name `{}` must not start with a digit",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::InvalidRing(format!("duplicate generator `{}`", g.name)));
            }
        }
        let top_degree = generators.iter().map(|g| g.degree * (g.truncation - 1)).sum();
        Ok(Arc::new(Self { generators, top_degree }))
    }

    /// Single generator ring `Z2[name]/(name^truncation)`.
    pub fn truncated(name: &str, degree: u32, truncation: u32) -> Result<Arc<Self>> {
        Self::new(vec![Generator { name: name.to_string(), degree, truncation }])
    }

    /// Parses `name:degree:truncation` entries separated by commas.
    /// The empty string is the ground ring Z/2.
    pub fn parse(text: &str) -> Result<Arc<Self>> {
        let mut gens = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::InvalidRing(format!(
                    "expected name:degree:truncation, got `{part}`"
                )));
            }
            let num = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| Error::InvalidRing(format!("bad integer `{s}` in `{part}`")))
            };
            gens.push(Generator {
                name: fields[0].to_string(),
                degree: num(fields[1])?,
                truncation: num(fields[2])?,
            });
        }
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn spec_string(&self) -> String {
        self.generators
            .iter()
            .map(|g| format!("{}:{}:{}", g.name, g.degree, g.truncation))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn monomial_degree(&self, m: &Monomial) -> u32 {
        self.generators.iter().zip(&m.0).map(|(g, e)| g.degree * e).sum()
    }

    /// Product of two monomials, or `None` when a truncation kills it.
    fn monomial_mul(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(a.0.len());
        for ((g, x), y) in self.generators.iter().zip(&a.0).zip(&b.0) {
            let e = x + y;
            if e >= g.truncation {
                return None;
            }
            exps.push(e);
        }
        Some(Monomial(exps))
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "Z2");
        }
        let names: Vec<_> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<_> =
            self.generators.iter().map(|g| format!("{}^{}", g.name, g.truncation)).collect();
        write!(f, "Z2[{}]/({})", names.join(","), rels.join(","))
    }
}

/// Exponent vector, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Element of a [`GradedRing`]: a set of surviving monomials.
#[derive(Debug, Clone)]
pub struct RingElement {
    ring: Arc<GradedRing>,
    terms: BTreeSet<Monomial>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for RingElement {}

fn same_ring(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElement {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Self { ring: ring.clone(), terms: BTreeSet::new() }
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::monomial(ring, Monomial::one(ring.generators.len()))
    }

    /// A single monomial; truncated monomials give zero.
    pub fn monomial(ring: &Arc<GradedRing>, m: Monomial) -> Self {
        assert_eq!(m.0.len(), ring.generators.len(), "exponent vector arity");
        let mut terms = BTreeSet::new();
        if m.0.iter().zip(&ring.generators).all(|(e, g)| *e < g.truncation) {
            terms.insert(m);
        }
        Self { ring: ring.clone(), terms }
    }

    /// `name^exp`, zero when truncated.
    pub fn generator_power(ring: &Arc<GradedRing>, name: &str, exp: u32) -> Result<Self> {
        let idx = ring
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::InvalidRing(format!("no generator named `{name}`")))?;
        let mut exps = vec![0; ring.generators.len()];
        exps[idx] = exp;
        Ok(Self::monomial(ring, Monomial(exps)))
    }

    /// Parses sums like `1 + a + a^2*b + w1^2w2`.
    pub fn parse(ring: &Arc<GradedRing>, text: &str) -> Result<Self> {
        let err = |reason: &str| Error::ElementParse { text: text.to_string(), reason: reason.into() };
        let mut out = Self::zero(ring);
        if text.trim().is_empty() {
            return Err(err("empty expression"));
        }
        for term in text.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(err("empty summand"));
            }
            if term == "0" {
                continue;
            }
            if term == "1" {
                out = &out + &Self::one(ring);
                continue;
            }
            let mut exps = vec![0u32; ring.generators.len()];
            let mut rest = term;
            while !rest.is_empty() {
                rest = rest.trim_start_matches(['*', ' ']);
                if rest.is_empty() {
                    break;
                }
                // longest generator name that prefixes the remaining text
                let (idx, g) = ring
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| rest.starts_with(g.name.as_str()))
                    .max_by_key(|(_, g)| g.name.len())
                    .ok_or_else(|| err(&format!("unknown factor in `{term}`")))?;
                rest = &rest[g.name.len()..];
                let mut exp = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                    if digits.is_empty() {
                        return Err(err("missing exponent after `^`"));
                    }
                    exp = digits.parse().map_err(|_| err("exponent overflow"))?;
                    rest = &r[digits.len()..];
                }
                exps[idx] += exp;
            }
            out = &out + &Self::monomial(ring, Monomial(exps));
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_one()
    }

    /// Degree of the element if it is a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|m| self.ring.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero or homogeneous of the given degree.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.iter().all(|m| self.ring.monomial_degree(m) == degree)
    }

    /// Part of the element living in the given degree.
    pub fn component(&self, degree: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|m| self.ring.monomial_degree(m) == degree)
                .cloned()
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(m) = self.ring.monomial_mul(a, b) {
                    // coefficients live in Z/2
                    if !terms.remove(&m) {
                        terms.insert(m);
                    }
                }
            }
        }
        Ok(Self { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

/// Panics on ring mismatch; use [`RingElement::try_add`] for a checked sum.
impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

/// Panics on ring mismatch; use [`RingElement::try_mul`] for a checked product.
impl Mul for &RingElement {
    type Output = RingElement;

    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl RingElement {
    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (g, &e) in self.ring.generators.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => s.push_str(&g.name),
                _ => s.push_str(&format!("{}^{}", g.name, e)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Terms ordered by increasing degree, then by exponent vector descending.
    fn ordered_terms(&self) -> Vec<&Monomial> {
        let mut ts: Vec<&Monomial> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            self.ring
                .monomial_degree(a)
                .cmp(&self.ring.monomial_degree(b))
                .then_with(|| b.cmp(a))
        });
        ts
    }

    /// True when printing needs parentheses as a coefficient.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.ordered_terms().into_iter().map(|m| self.fmt_monomial(m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp4() -> Arc<GradedRing> {
        GradedRing::truncated("a", 1, 5).unwrap()
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let r = rp4();
        let a = RingElement::parse(&r, "a").unwrap();
        let a2 = RingElement::parse(&r, "a^2").unwrap();
        assert!((&a + &a).is_zero());
        assert_eq!((&a + &a2).to_string(), "a + a^2");
        let s = RingElement::parse(&r, "a^3 + a^3 + a^4").unwrap();
        assert_eq!(s, RingElement::parse(&r, "a^4").unwrap());
    }

    #[test]
    fn multiplication_truncates() {
        let r = rp4();
        let a = RingElement::parse(&r, "a").unwrap();
        let a2 = RingElement::parse(&r, "a^2").unwrap();
        let a3 = RingElement::parse(&r, "a^3").unwrap();
        assert_eq!(&a * &a3, RingElement::parse(&r, "a^4").unwrap());
        assert!((&a2 * &a3).is_zero());
        let one_a = RingElement::parse(&r, "1 + a").unwrap();
        assert_eq!(&one_a * &one_a, RingElement::parse(&r, "1 + a^2").unwrap());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let r = rp4();
        let other = GradedRing::truncated("c", 2, 3).unwrap();
        let a = RingElement::one(&r);
        let c = RingElement::one(&other);
        assert_eq!(a.try_add(&c), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&c), Err(Error::RingMismatch));
        // structurally equal rings built separately are the same ring
        let again = rp4();
        assert!(a.try_add(&RingElement::one(&again)).is_ok());
    }

    #[test]
    fn parsing_products_and_juxtaposition() {
        let r = GradedRing::parse("w1:1:8,w2:2:8").unwrap();
        let x = RingElement::parse(&r, "w1^2w2 + w2*w1").unwrap();
        assert_eq!(x.terms().count(), 2);
        assert!(!x.is_homogeneous_of(5));
        assert_eq!(x.component(4).to_string(), "w1^2w2");
        assert_eq!(x.component(3).to_string(), "w1w2");
        assert_eq!(RingElement::parse(&r, "w1^2w2").unwrap().homogeneous_degree(), Some(4));
        assert!(RingElement::parse(&r, "w3").is_err());
        assert!(RingElement::parse(&r, "w1^").is_err());
        assert!(RingElement::parse(&r, "").is_err());
    }

    #[test]
    fn ring_presentation_checks() {
        assert!(GradedRing::parse("a:0:3").is_err());
        assert!(GradedRing::parse("a:1:0").is_err());
        assert!(GradedRing::parse("a:1:3,a:2:2").is_err());
        assert!(GradedRing::parse("a:1").is_err());
        let r = GradedRing::parse("a:1:5, c:2:3").unwrap();
        assert_eq!(r.top_degree(), 4 + 4);
        assert_eq!(r.to_string(), "Z2[a,c]/(a^5,c^3)");
        assert_eq!(GradedRing::parse("").unwrap().top_degree(), 0);
    }
}
