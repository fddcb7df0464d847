//! Powers of the first Stiefel-Whitney class `t` of the line bundle attached
//! to a fiberwise free involution, written in the basis `1, t, ..., t^n`
//! over the base ring.
//!
//! Two independent routes produce the coefficients `W_{i,j}` of
//! `t^{n+j+1} = W_{1,j} t^n + W_{2,j} t^{n-1} + ... + W_{n+1,j}`:
//! the recurrence [`w_table_recurrence`] and the convolution [`w_conner`].

use std::fmt;

use super::classes::{invert_total_class, TotalClass};
use super::ring::RingElement;

/// Table `W_{i,j}` for `1 <= i <= n+1`, `0 <= j <= j_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WTable {
    n: u32,
    // rows[j][i - 1]
    rows: Vec<Vec<RingElement>>,
}

impl WTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// `W_{i,j}`; zero for `i = n+2`.
    pub fn get(&self, i: u32, j: u32) -> RingElement {
        assert!(i >= 1 && i <= self.n + 2, "row index {i} out of range");
        let row = &self.rows[j as usize];
        match row.get(i as usize - 1) {
            Some(e) => e.clone(),
            None => RingElement::zero(row[0].ring()),
        }
    }
}

/// `W_{i,0} = w_i`, `W_{i,j+1} = W_{i+1,j} + W_{1,j} w_i`, `W_{n+2,j} = 0`.
///
/// # Panics
/// If the rank of `w` differs from `n + 1`.
pub fn w_table_recurrence(w: &TotalClass, n: u32, j_max: u32) -> WTable {
    assert_eq!(w.rank(), n + 1, "rank of the bundle must be n + 1");
    let ring = w.ring();
    let first: Vec<RingElement> = (1..=n + 1).map(|i| w.component(i)).collect();
    let mut rows = vec![first];
    for j in 0..j_max as usize {
        let prev = &rows[j];
        let lead = prev[0].clone();
        let next = (1..=n + 1)
            .map(|i| {
                let shifted = prev.get(i as usize).cloned().unwrap_or_else(|| RingElement::zero(ring));
                &shifted + &(&lead * &w.component(i))
            })
            .collect();
        rows.push(next);
    }
    WTable { n, rows }
}

/// `W_{i,j} = sum_{k=0}^{j} w̄_k w_{i+j-k}` with `w_m = 0` above the rank.
pub fn w_conner(w: &TotalClass, i: u32, j: u32) -> RingElement {
    let dual = invert_total_class(w);
    w_conner_with_dual(w, &dual, i, j)
}

/// [`w_conner`] with a precomputed dual class.
pub fn w_conner_with_dual(w: &TotalClass, dual: &TotalClass, i: u32, j: u32) -> RingElement {
    let ring = w.ring();
    let mut acc = RingElement::zero(ring);
    for k in 0..=j {
        let idx = i + j - k;
        if idx > w.rank() {
            continue;
        }
        acc = &acc + &(&dual.component(k) * &w.component(idx));
    }
    acc
}

/// `c_n t^n + ... + c_1 t + c_0` with coefficients in the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPowerExpression {
    n: u32,
    /// `coefficients[p]` multiplies `t^p`.
    coefficients: Vec<RingElement>,
}

impl TPowerExpression {
    pub fn new(n: u32, coefficients: Vec<RingElement>) -> Self {
        assert_eq!(coefficients.len(), n as usize + 1, "need n + 1 coefficients");
        Self { n, coefficients }
    }

    /// `t^p` for `p <= n`.
    pub fn basis(w: &TotalClass, n: u32, p: u32) -> Self {
        assert!(p <= n);
        let ring = w.ring();
        let coefficients = (0..=n)
            .map(|q| if q == p { RingElement::one(ring) } else { RingElement::zero(ring) })
            .collect();
        Self { n, coefficients }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coefficient(&self, power: u32) -> &RingElement {
        &self.coefficients[power as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(RingElement::is_zero)
    }

    /// Multiplies by `t` and rewrites `t^{n+1}` with
    /// `t^{n+1} = w_1 t^n + w_2 t^{n-1} + ... + w_{n+1}`.
    pub fn times_t(&self, w: &TotalClass) -> Self {
        let ring = w.ring();
        let overflow = self.coefficients[self.n as usize].clone();
        let mut coefficients = Vec::with_capacity(self.coefficients.len());
        coefficients.push(RingElement::zero(ring));
        coefficients.extend(self.coefficients[..self.n as usize].iter().cloned());
        for i in 1..=self.n + 1 {
            let p = (self.n + 1 - i) as usize;
            coefficients[p] = &coefficients[p] + &(&overflow * &w.component(i));
        }
        Self { n: self.n, coefficients }
    }
}

impl fmt::Display for TPowerExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for p in (0..=self.n).rev() {
            let c = &self.coefficients[p as usize];
            if c.is_zero() {
                continue;
            }
            let tpart = match p {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{p}"),
            };
            let coeff = if c.is_one() && p > 0 {
                String::new()
            } else if c.is_compound() && p > 0 {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(format!("{coeff}{tpart}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `t^m` in the basis `1, ..., t^n`: the identity for `m <= n`, and for
/// `m = n + j + 1` the coefficient of `t^{n-i+1}` is `W_{i,j}`.
pub fn reduce_t_power(w: &TotalClass, n: u32, m: u32) -> TPowerExpression {
    if m <= n {
        return TPowerExpression::basis(w, n, m);
    }
    let j = m - n - 1;
    let dual = invert_total_class(w);
    let ring = w.ring();
    let mut coefficients = vec![RingElement::zero(ring); n as usize + 1];
    for i in 1..=n + 1 {
        coefficients[(n + 1 - i) as usize] = w_conner_with_dual(w, &dual, i, j);
    }
    TPowerExpression::new(n, coefficients)
}

/// Largest `m <= n + k` with `t^m != 0`, where `k` is the top degree of the
/// base ring (the cohomology of `E/Z2` vanishes above `n + k`).
pub fn height_of_t(w: &TotalClass, n: u32, k: u32) -> u32 {
    (n..=n + k).rev().find(|&m| !reduce_t_power(w, n, m).is_zero()).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::z2::classes::{tangent_total_class, ProjectiveSpace};
    use crate::z2::ring::GradedRing;

    fn generic_rank2() -> (Arc<GradedRing>, TotalClass) {
        let r = GradedRing::parse("w1:1:8,w2:2:8").unwrap();
        let w = TotalClass::from_total(&RingElement::parse(&r, "1 + w1 + w2").unwrap(), 2).unwrap();
        (r, w)
    }

    #[test]
    fn recurrence_starts_at_w() {
        let (_, w) = generic_rank2();
        let table = w_table_recurrence(&w, 1, 3);
        assert_eq!(table.get(1, 0), w.component(1));
        assert_eq!(table.get(2, 0), w.component(2));
        assert!(table.get(3, 2).is_zero());
    }

    #[test]
    fn circle_bundle_powers() {
        let (r, w) = generic_rank2();
        let e = |s: &str| RingElement::parse(&r, s).unwrap();
        let table = w_table_recurrence(&w, 1, 2);
        assert_eq!(table.get(1, 1), e("w1^2 + w2"));
        assert_eq!(table.get(2, 1), e("w1w2"));
        assert_eq!(table.get(1, 2), e("w1^3"));
        assert_eq!(table.get(2, 2), e("w1^2w2 + w2^2"));
        assert_eq!(w_conner(&w, 1, 1), e("w2 + w1^2"));
        assert_eq!(reduce_t_power(&w, 1, 3).to_string(), "(w1^2 + w2)t + w1w2");
    }

    #[test]
    fn rp4_powers() {
        let d = tangent_total_class(ProjectiveSpace::Real(4));
        let s = |m| reduce_t_power(&d.w, d.n, m).to_string();
        assert_eq!(s(4), "at^3 + a^4");
        assert_eq!(s(5), "a^2t^3 + a^4t");
        assert_eq!(s(6), "a^3t^3 + a^4t^2");
        assert_eq!(s(7), "0");
        assert_eq!(height_of_t(&d.w, d.n, d.k), 6);
    }

    #[test]
    fn cp2_powers() {
        let d = tangent_total_class(ProjectiveSpace::Complex(2));
        assert_eq!(reduce_t_power(&d.w, d.n, 4).to_string(), "ct^2 + c^2");
        assert_eq!(reduce_t_power(&d.w, d.n, 5).to_string(), "ct^3 + c^2t");
        // w_2^2 = w_4 = c^2 makes the two contributions to t^6 cancel
        let mut step = reduce_t_power(&d.w, d.n, 5);
        for m in 6..=8 {
            step = step.times_t(&d.w);
            assert!(step.is_zero(), "t^{m}");
            assert!(reduce_t_power(&d.w, d.n, m).is_zero(), "t^{m}");
        }
        assert_eq!(height_of_t(&d.w, d.n, d.k), 5);
    }

    #[test]
    fn trivial_bundle_height() {
        let r = GradedRing::truncated("a", 1, 4).unwrap();
        let w = TotalClass::trivial(&r, 3);
        assert_eq!(height_of_t(&w, 2, 3), 2);
        for m in 0..=2 {
            assert_eq!(reduce_t_power(&w, 2, m), TPowerExpression::basis(&w, 2, m));
        }
        for m in 3..8 {
            assert!(reduce_t_power(&w, 2, m).is_zero());
        }
    }

    #[test]
    fn rp_power_of_two_single_term() {
        for r in 1..=3u32 {
            let m = 1u32 << r;
            let d = tangent_total_class(ProjectiveSpace::Real(m));
            let a_top = RingElement::generator_power(&d.ring, "a", m).unwrap();
            assert_eq!(w_conner(&d.w, 2, m - 2), a_top);
            assert!(!reduce_t_power(&d.w, d.n, 2 * m - 2).is_zero());
        }
    }
}
