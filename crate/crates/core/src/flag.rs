//! Nested planes `e_0 ⊃ e_1 ⊃ ...` transverse to the faces of the cross-polytope.
//!
//! `e_j` is the kernel of the Vandermonde-type matrix `M_j` whose rows are
//! `(x_1^p, ..., x_N^p)` for `p = 0..=j`. A vertex `±e_i` of the cross-polytope
//! corresponds to the column `±col_i(M_j)`, so a face meets `e_j` in its relative
//! interior exactly when some kernel vector has the face's sign pattern.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Matrix};
use crate::scalar::Scalar;
use crate::simplicial::alt_number;
use crate::Rational;

/// Largest `N` for which [`build_flag`] checks the transversality condition by
/// enumerating all `3^N` faces.
pub const DEFAULT_VERIFY_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct GenericFlag<T> {
    x: Vec<T>,
    j_max: usize,
    /// Rows `p = 0..=j_max`; `M_j` is the top `j + 1` rows.
    vandermonde: Matrix<T>,
}

impl<T: Scalar> GenericFlag<T> {
    /// Flag from explicit evaluation points, without the exhaustive check.
    pub fn new(j_max: usize, x: Vec<T>) -> Result<Self> {
        let n = x.len();
        if n < 2 || j_max + 2 > n {
            return Err(Error::InvalidFlag(format!("need j_max <= N - 2, got j_max = {j_max}, N = {n}")));
        }
        if !x[0].is_positive() {
            return Err(Error::InvalidFlag(format!("evaluation point x_1 = {} is not positive", x[0])));
        }
        if let Some(i) = (1..n).find(|i| x[*i] <= x[i - 1]) {
            return Err(Error::InvalidFlag(format!(
                "evaluation points must increase strictly: x_{i} = {}, x_{} = {}",
                x[i - 1],
                i + 1,
                x[i]
            )));
        }
        let rows = (0..=j_max)
            .map(|p| x.iter().map(|xi| pow(xi, p)).collect())
            .collect();
        Ok(Self { vandermonde: Matrix::from_rows(rows), x, j_max })
    }

    /// Number of coordinates `N`.
    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn points(&self) -> &[T] {
        &self.x
    }

    /// `M_j`, whose kernel is `e_j`.
    pub fn matrix(&self, j: usize) -> Matrix<T> {
        assert!(j <= self.j_max, "level {j} exceeds flag depth {}", self.j_max);
        self.vandermonde.top_rows(j + 1)
    }

    /// Column `i` (0-based) of `M_j`, the image of the vertex `e_{i+1}`.
    pub fn column(&self, j: usize, i: usize) -> Vec<T> {
        (0..=j).map(|p| self.vandermonde[(p, i)].clone()).collect()
    }
}

fn pow<T: Scalar>(x: &T, p: usize) -> T {
    (0..p).fold(T::one(), |acc, _| acc * x.clone())
}

/// Builds the flag with `x_i = i` by default and, for `N <= DEFAULT_VERIFY_MAX_N`,
/// checks the transversality condition at every level.
pub fn build_flag<T: Scalar>(n: usize, j_max: usize, x: Option<Vec<T>>) -> Result<GenericFlag<T>> {
    build_flag_with_cap(n, j_max, x, DEFAULT_VERIFY_MAX_N)
}

/// As [`build_flag`], verifying exhaustively only when `N <= verify_max_n`.
pub fn build_flag_with_cap<T: Scalar>(
    n: usize,
    j_max: usize,
    x: Option<Vec<T>>,
    verify_max_n: usize,
) -> Result<GenericFlag<T>> {
    let x = x.unwrap_or_else(|| (1..=n as i64).map(T::from_int).collect());
    if x.len() != n {
        return Err(Error::InvalidFlag(format!("expected {n} evaluation points, got {}", x.len())));
    }
    let flag = GenericFlag::new(j_max, x)?;
    if n <= verify_max_n {
        for j in 0..=j_max {
            let bad = verify_condition3(&flag, j);
            if !bad.is_empty() {
                return Err(Error::FlagNotGeneric(bad.len()));
            }
        }
    }
    Ok(flag)
}

/// Strictly increasing positive rationals drawn from `rng`.
pub fn random_points<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    let mut acc = Rational::from_int(0);
    (0..n)
        .map(|_| {
            let step = Rational::from_ratio(rng.random_range(1..=9), rng.random_range(1..=7));
            acc = acc.clone() + step;
            acc.clone()
        })
        .collect()
}

/// Sign pattern of a face of the cross-polytope boundary: entry `i` is the
/// sign of the vertex `±e_{i+1}` in the face, or 0 when absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|e| !(-1..=1).contains(e)) {
            return Err(Error::Input(format!("sign vector entries must be -1, 0 or 1: {entries:?}")));
        }
        Ok(Self(entries))
    }

    /// From cross-polytope vertex labels `±i`.
    pub fn from_labels(n: usize, labels: &[i32]) -> Result<Self> {
        let mut out = vec![0i8; n];
        for l in labels {
            let idx = l.unsigned_abs() as usize;
            if *l == 0 || idx > n {
                return Err(Error::Input(format!("label {l} outside ±1..±{n}")));
            }
            let s = if *l > 0 { 1 } else { -1 };
            if out[idx - 1] == -s {
                return Err(Error::Input(format!("labels {l} and {} are antipodal", -l)));
            }
            out[idx - 1] = s;
        }
        Ok(Self(out))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|i| self.0[*i] != 0).collect()
    }

    pub fn labels(&self) -> Vec<i32> {
        self.support().into_iter().map(|i| (i as i32 + 1) * self.0[i] as i32).collect()
    }

    /// Sign changes over the support, in index order.
    pub fn alt(&self) -> usize {
        alt_number(self.labels())
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }

    /// Nonempty faces of this face (itself included).
    pub fn subfaces(&self) -> impl Iterator<Item = SignVector> + '_ {
        let support = self.support();
        (1u64..1 << support.len()).map(move |mask| {
            let mut out = vec![0i8; self.0.len()];
            for (bit, i) in support.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    out[*i] = self.0[*i];
                }
            }
            SignVector(out)
        })
    }

    /// Every nonempty face of the boundary of the `N`-dimensional cross-polytope.
    pub fn all_faces(n: usize) -> impl Iterator<Item = SignVector> {
        let total = 3u64.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut out = vec![0i8; n];
            for e in out.iter_mut() {
                *e = (code % 3) as i8 - 1;
                code /= 3;
            }
            SignVector(out)
        })
        .filter(|s| s.0.iter().any(|e| *e != 0))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: String = self
            .0
            .iter()
            .map(|e| match e {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect();
        write!(f, "({cells})")
    }
}

/// `μ_i = (-1)^i det(A_i)` (1-based `i`), where `A_i` drops column `i` from the
/// `d × (d+1)` matrix with the given columns. `Σ μ_i a_i = 0`.
pub fn cramer_dependency<T: Scalar>(columns: &[Vec<T>]) -> Result<Vec<T>> {
    let d = columns.len().saturating_sub(1);
    if columns.is_empty() || columns.iter().any(|c| c.len() != d) {
        return Err(Error::Input(format!("need d + 1 columns of height d, got {} columns", columns.len())));
    }
    Ok((0..=d)
        .map(|skip| {
            let rest: Vec<Vec<T>> =
                columns.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| c.clone()).collect();
            let det = if d == 0 { T::one() } else { Matrix::from_columns(&rest).determinant() };
            if skip % 2 == 0 {
                -det
            } else {
                det
            }
        })
        .collect())
}

/// A kernel vector of `M_j` whose sign pattern is exactly `face`.
pub fn face_plane_witness<T: Scalar>(face: &SignVector, flag: &GenericFlag<T>, j: usize) -> Option<Vec<T>> {
    assert_eq!(face.len(), flag.dimension(), "sign vector length differs from flag dimension");
    let support = face.support();
    if support.is_empty() {
        return None;
    }
    let m = flag.matrix(j).select_columns(&support);
    let mut sys = LinearSystem::new(support.len());
    for r in 0..m.rows() {
        sys.equal(m.row(r).to_vec(), T::zero());
    }
    for (k, i) in support.iter().enumerate() {
        let mut c = vec![T::zero(); support.len()];
        c[k] = T::from_int(face.entries()[*i] as i64);
        sys.at_least(c, T::one());
    }
    let mu = sys.solve()?;
    let mut full = vec![T::zero(); flag.dimension()];
    for (k, i) in support.iter().enumerate() {
        full[*i] = mu[k].clone();
    }
    Some(full)
}

/// Whether `e_j` meets the relative interior of the face.
pub fn face_meets_plane<T: Scalar>(face: &SignVector, flag: &GenericFlag<T>, j: usize) -> bool {
    face_plane_witness(face, flag, j).is_some()
}

/// Whether `e_j` meets the closed face, i.e. the relative interior of some subface.
pub fn closed_face_meets_plane<T: Scalar>(face: &SignVector, flag: &GenericFlag<T>, j: usize) -> bool {
    face.subfaces().any(|s| face_meets_plane(&s, flag, j))
}

/// All faces where `face_meets_plane` disagrees with `Alt >= j + 1`.
pub fn verify_condition3<T: Scalar>(flag: &GenericFlag<T>, j: usize) -> Vec<SignVector> {
    SignVector::all_faces(flag.dimension())
        .filter(|f| face_meets_plane(f, flag, j) != (f.alt() > j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn sv(s: &str) -> SignVector {
        SignVector::new(
            s.chars()
                .map(|c| match c {
                    '+' => 1,
                    '-' => -1,
                    _ => 0,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_matrices() {
        let f: GenericFlag<Rational> = build_flag(3, 1, None).unwrap();
        assert_eq!(f.matrix(0).row(0), &[q(1), q(1), q(1)]);
        assert_eq!(f.matrix(1).row(1), &[q(1), q(2), q(3)]);
        let f: GenericFlag<Rational> = build_flag(2, 0, None).unwrap();
        assert_eq!(f.matrix(0).kernel_basis(), vec![vec![q(-1), q(1)]]);
        let f: GenericFlag<Rational> = build_flag(4, 2, None).unwrap();
        for j in 0..=2 {
            assert_eq!(f.matrix(j).rank(), j + 1);
        }
    }

    #[test]
    fn rejects_bad_points() {
        assert!(build_flag(3, 1, Some(vec![q(1), q(3), q(2)])).is_err());
        assert!(build_flag(3, 1, Some(vec![q(0), q(1), q(2)])).is_err());
        assert!(build_flag::<Rational>(3, 2, None).is_err());
    }

    #[test]
    fn cramer_examples() {
        let f: GenericFlag<Rational> = build_flag(3, 1, None).unwrap();
        let cols: Vec<_> = (0..3).map(|i| f.column(1, i)).collect();
        assert_eq!(cramer_dependency(&cols).unwrap(), vec![q(-1), q(2), q(-1)]);
        let cols = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        let mu = cramer_dependency(&cols).unwrap();
        assert_eq!(mu, vec![q(1), q(1), q(-1)]);
    }

    #[test]
    fn face_intersections() {
        let f2: GenericFlag<Rational> = build_flag(2, 0, None).unwrap();
        assert!(face_meets_plane(&sv("+-"), &f2, 0));
        assert!(!face_meets_plane(&sv("++"), &f2, 0));
        let f3: GenericFlag<Rational> = build_flag(3, 1, None).unwrap();
        assert!(face_meets_plane(&sv("+-+"), &f3, 1));
        assert!(!face_meets_plane(&sv("++-"), &f3, 1));
        assert!(!face_meets_plane(&sv("+-0"), &f3, 1));
        let w = face_plane_witness(&sv("-+-"), &f3, 1).unwrap();
        assert!(f3.matrix(1).mul_vec(&w).iter().all(|v| *v == q(0)));
    }

    #[test]
    fn condition3_two_points() {
        let f: GenericFlag<Rational> = build_flag(2, 0, None).unwrap();
        let meeting: Vec<String> =
            SignVector::all_faces(2).filter(|s| face_meets_plane(s, &f, 0)).map(|s| s.to_string()).collect();
        assert_eq!(meeting.len(), 2);
        assert!(meeting.contains(&"(+-)".to_string()) && meeting.contains(&"(-+)".to_string()));
        assert!(verify_condition3(&f, 0).is_empty());
    }

    #[test]
    fn closed_faces() {
        let f: GenericFlag<Rational> = build_flag(3, 1, None).unwrap();
        assert!(closed_face_meets_plane(&sv("+-+"), &f, 0));
        assert!(!closed_face_meets_plane(&sv("++0"), &f, 0));
        assert_eq!(sv("+-+").subfaces().count(), 7);
        assert_eq!(SignVector::all_faces(3).count(), 26);
    }

    #[test]
    fn float_flag_agrees_on_small_case() {
        let f: GenericFlag<f64> = build_flag(4, 2, None).unwrap();
        assert!(verify_condition3(&f, 2).is_empty());
    }
}
