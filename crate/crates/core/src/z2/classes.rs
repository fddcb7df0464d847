use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::ring::{GradedRing, RingElement};

/// Total Stiefel-Whitney class `1 + w_1 + w_2 + ...` of a vector bundle,
/// stored degree by degree up to the top degree of the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalClass {
    ring: Arc<GradedRing>,
    rank: u32,
    components: Vec<RingElement>,
}

impl TotalClass {
    /// Builds a class from its components `w_0, w_1, ...`; missing trailing
    /// components are zero.
    pub fn new(ring: &Arc<GradedRing>, rank: u32, components: Vec<RingElement>) -> Result<Self> {
        let top = ring.top_degree();
        let mut comps = Vec::with_capacity(top as usize + 1);
        for (d, c) in components.into_iter().enumerate() {
            let d = d as u32;
            if !Arc::ptr_eq(c.ring(), ring) && **c.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !c.is_homogeneous_of(d) {
                return Err(Error::InvalidTotalClass(format!("w_{d} = {c} is not homogeneous of degree {d}")));
            }
            if d > rank && !c.is_zero() {
                return Err(Error::InvalidTotalClass(format!("w_{d} is nonzero above the rank {rank}")));
            }
            if d > top {
                continue;
            }
            comps.push(c);
        }
        if comps.is_empty() || !comps[0].is_one() {
            return Err(Error::InvalidTotalClass("w_0 must be 1".into()));
        }
        while comps.len() <= top as usize {
            comps.push(RingElement::zero(ring));
        }
        Ok(Self { ring: ring.clone(), rank, components: comps })
    }

    /// Splits a total element `1 + ...` into homogeneous components.
    pub fn from_total(total: &RingElement, rank: u32) -> Result<Self> {
        let ring = total.ring().clone();
        let comps = (0..=ring.top_degree()).map(|d| total.component(d)).collect();
        Self::new(&ring, rank, comps)
    }

    pub fn trivial(ring: &Arc<GradedRing>, rank: u32) -> Self {
        Self::new(ring, rank, vec![RingElement::one(ring)]).expect("1 is a valid total class")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `w_d`, zero outside `0..=top_degree`.
    pub fn component(&self, d: u32) -> RingElement {
        self.components
            .get(d as usize)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.ring))
    }

    pub fn components(&self) -> &[RingElement] {
        &self.components
    }

    pub fn total(&self) -> RingElement {
        self.components.iter().fold(RingElement::zero(&self.ring), |acc, c| &acc + c)
    }
}

impl fmt::Display for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.total())
    }
}

/// Dual class `w̄ = 1 / w`, computed degree by degree through
/// `w̄_d = sum_{e=1..d} w_e w̄_{d-e}`.
///
/// The dual is not bounded by the rank of the bundle; its rank is reported as
/// the top degree of the ring.
pub fn invert_total_class(w: &TotalClass) -> TotalClass {
    let ring = w.ring();
    let top = ring.top_degree();
    let mut dual: Vec<RingElement> = vec![RingElement::one(ring)];
    for d in 1..=top {
        let mut acc = RingElement::zero(ring);
        for e in 1..=d {
            acc = &acc + &(&w.component(e) * &dual[(d - e) as usize]);
        }
        dual.push(acc);
    }
    TotalClass::new(ring, top, dual).expect("dual class is homogeneous by construction")
}

/// `binom(n, k) mod 2` by Lucas' theorem.
pub fn binomial_mod2(n: u64, k: u64) -> bool {
    k <= n && (n & k) == k
}

/// Spaces whose tangent bundles have closed-form Stiefel-Whitney classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveSpace {
    Real(u32),
    Complex(u32),
}

impl ProjectiveSpace {
    /// Parses `rp:m` or `cp:m`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, dim) = text
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("expected rp:m or cp:m, got `{text}`")))?;
        let m: u32 = dim
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad dimension in `{text}`")))?;
        if m == 0 {
            return Err(Error::Input("projective space dimension must be >= 1".into()));
        }
        match kind.trim() {
            "rp" | "RP" => Ok(Self::Real(m)),
            "cp" | "CP" => Ok(Self::Complex(m)),
            other => Err(Error::Input(format!("unknown space kind `{other}`"))),
        }
    }
}

impl fmt::Display for ProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Real(m) => write!(f, "rp:{m}"),
            Self::Complex(m) => write!(f, "cp:{m}"),
        }
    }
}

/// Sphere bundle of a tangent bundle, described by its characteristic data.
#[derive(Debug, Clone)]
pub struct TangentData {
    pub ring: Arc<GradedRing>,
    pub w: TotalClass,
    /// Fiber sphere dimension.
    pub n: u32,
    /// Base dimension.
    pub k: u32,
}

/// `w(RP^m) = (1+a)^{m+1}` and `w(CP^m) = (1+c)^{m+1}` with `deg c = 2`.
pub fn tangent_total_class(space: ProjectiveSpace) -> TangentData {
    let (name, degree, m) = match space {
        ProjectiveSpace::Real(m) => ("a", 1, m),
        ProjectiveSpace::Complex(m) => ("c", 2, m),
    };
    let ring = GradedRing::truncated(name, degree, m + 1).expect("valid presentation");
    let mut total = RingElement::zero(&ring);
    for i in 0..=m {
        if binomial_mod2(u64::from(m) + 1, u64::from(i)) {
            total = &total + &RingElement::generator_power(&ring, name, i).unwrap();
        }
    }
    let real_dim = degree * m;
    let w = TotalClass::from_total(&total, real_dim).expect("tangent class is valid");
    TangentData { ring, w, n: real_dim - 1, k: real_dim }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(ring: &Arc<GradedRing>, s: &str) -> RingElement {
        RingElement::parse(ring, s).unwrap()
    }

    #[test]
    fn lucas_matches_pascal() {
        let mut row = vec![1u64];
        for n in 0..40u64 {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(binomial_mod2(n, k as u64), v % 2 == 1, "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 2;
            }
            row = next;
        }
    }

    #[test]
    fn dual_of_trivial_is_trivial() {
        let r = GradedRing::truncated("a", 1, 6).unwrap();
        let w = TotalClass::trivial(&r, 3);
        assert!(invert_total_class(&w).total().is_one());
    }

    #[test]
    fn dual_of_one_plus_a() {
        let r = GradedRing::truncated("a", 1, 4).unwrap();
        let w = TotalClass::from_total(&elem(&r, "1 + a"), 1).unwrap();
        let dual = invert_total_class(&w);
        assert_eq!(dual.total(), elem(&r, "1 + a + a^2 + a^3"));
        assert!((&w.total() * &dual.total()).is_one());
    }

    #[test]
    fn dual_of_rp_power_of_two() {
        for r in 1..=4u32 {
            let m = 1u32 << r;
            let data = tangent_total_class(ProjectiveSpace::Real(m));
            let expected = (0..m).map(|e| format!("a^{e}")).collect::<Vec<_>>().join(" + ");
            let expected = elem(&data.ring, &expected.replacen("a^0", "1", 1));
            assert_eq!(invert_total_class(&data.w).total(), expected, "r = {r}");
        }
    }

    #[test]
    fn tangent_classes() {
        let rp4 = tangent_total_class(ProjectiveSpace::Real(4));
        assert_eq!(rp4.w.total(), elem(&rp4.ring, "1 + a + a^4"));
        assert_eq!((rp4.n, rp4.k, rp4.w.rank()), (3, 4, 4));

        let rp8 = tangent_total_class(ProjectiveSpace::Real(8));
        assert_eq!(rp8.w.total(), elem(&rp8.ring, "1 + a + a^8"));

        let cp2 = tangent_total_class(ProjectiveSpace::Complex(2));
        assert!(cp2.w.component(1).is_zero());
        assert!(cp2.w.component(3).is_zero());
        assert_eq!(cp2.w.component(2), elem(&cp2.ring, "c"));
        assert_eq!(cp2.w.component(4), elem(&cp2.ring, "c^2"));
        assert_eq!((cp2.n, cp2.k), (3, 4));
    }

    #[test]
    fn rejects_malformed_classes() {
        let r = GradedRing::truncated("a", 1, 5).unwrap();
        assert!(TotalClass::from_total(&elem(&r, "a"), 2).is_err());
        assert!(TotalClass::from_total(&elem(&r, "1 + a^3"), 2).is_err());
        let bad = TotalClass::new(&r, 2, vec![elem(&r, "1"), elem(&r, "a^2")]);
        assert!(bad.is_err());
        assert!(ProjectiveSpace::parse("hp:2").is_err());
        assert!(ProjectiveSpace::parse("rp:0").is_err());
        assert_eq!(ProjectiveSpace::parse("cp:3").unwrap(), ProjectiveSpace::Complex(3));
    }
}
