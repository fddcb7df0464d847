//! Exact feasibility of mixed equality / inequality systems.
//!
//! Equalities are eliminated by Gaussian elimination, which leaves an affine
//! parameterization `x = x0 + K y` of their solution set. The inequalities are
//! rewritten in `y` and decided by Fourier-Motzkin elimination; a witness is
//! rebuilt by back-substitution through the elimination stages.

use crate::scalar::Scalar;

use super::matrix::{dot, Matrix};

/// `coeffs · x >= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality<T> {
    pub coeffs: Vec<T>,
    pub rhs: T,
}

/// `coeffs · x = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equality<T> {
    pub coeffs: Vec<T>,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<T> {
    nvars: usize,
    equalities: Vec<Equality<T>>,
    inequalities: Vec<Inequality<T>>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equal(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars);
        self.equalities.push(Equality { coeffs, rhs });
        self
    }

    pub fn at_least(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars);
        self.inequalities.push(Inequality { coeffs, rhs });
        self
    }

    /// `x_var >= rhs`.
    pub fn var_at_least(&mut self, var: usize, rhs: T) -> &mut Self {
        let mut c = vec![T::zero(); self.nvars];
        c[var] = T::one();
        self.at_least(c, rhs)
    }

    pub fn equalities(&self) -> &[Equality<T>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Inequality<T>] {
        &self.inequalities
    }

    /// Checks a candidate point against every constraint.
    pub fn satisfied_by(&self, x: &[T]) -> bool {
        self.equalities.iter().all(|e| (dot(&e.coeffs, x) - e.rhs.clone()).is_negligible())
            && self.inequalities.iter().all(|c| {
                let slack = dot(&c.coeffs, x) - c.rhs.clone();
                slack.is_negligible() || slack.is_positive()
            })
    }

    /// A feasible point, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<T>> {
        let (x0, basis) = self.affine_solution_space()?;
        let reduced: Vec<Inequality<T>> = self
            .inequalities
            .iter()
            .map(|c| Inequality {
                coeffs: basis.iter().map(|k| dot(&c.coeffs, k)).collect(),
                rhs: c.rhs.clone() - dot(&c.coeffs, &x0),
            })
            .collect();
        let y = fourier_motzkin(basis.len(), reduced)?;
        let mut x = x0;
        for (yl, k) in y.iter().zip(&basis) {
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi = xi.clone() + yl.clone() * ki.clone();
            }
        }
        Some(x)
    }

    /// Particular solution and kernel basis of the equalities.
    pub fn affine_solution_space(&self) -> Option<(Vec<T>, Vec<Vec<T>>)> {
        let n = self.nvars;
        if self.equalities.is_empty() {
            let basis = (0..n)
                .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
                .collect();
            return Some((vec![T::zero(); n], basis));
        }
        let aug = Matrix::from_rows(
            self.equalities
                .iter()
                .map(|e| e.coeffs.iter().cloned().chain(std::iter::once(e.rhs.clone())).collect())
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.contains(&n) {
            return None;
        }
        let mut x0 = vec![T::zero(); n];
        for (row, &p) in pivots.iter().enumerate() {
            x0[p] = r[(row, n)].clone();
        }
        let coeffs = aug.select_columns(&(0..n).collect::<Vec<_>>());
        Some((x0, coeffs.kernel_basis()))
    }
}

/// Decides `{y : c·y >= rhs for all c}` and returns a witness.
pub fn fourier_motzkin<T: Scalar>(nvars: usize, constraints: Vec<Inequality<T>>) -> Option<Vec<T>> {
    let mut stages: Vec<Vec<Inequality<T>>> = vec![Vec::new(); nvars + 1];
    stages[nvars] = normalize_all(constraints)?;
    for v in (0..nvars).rev() {
        let current = &stages[v + 1];
        let mut next = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for c in current {
            if c.coeffs[v].is_negligible() {
                next.push(c.clone());
            } else if c.coeffs[v].is_positive() {
                lower.push(c);
            } else {
                upper.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.coeffs[v].clone();
                let b = -up.coeffs[v].clone();
                let mut coeffs: Vec<T> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| x.clone() * b.clone() + y.clone() * a.clone())
                    .collect();
                coeffs[v] = T::zero();
                next.push(Inequality { coeffs, rhs: lo.rhs.clone() * b.clone() + up.rhs.clone() * a.clone() });
            }
        }
        stages[v] = normalize_all(next)?;
    }

    let mut y = vec![T::zero(); nvars];
    for v in 0..nvars {
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for c in &stages[v + 1] {
            let cv = &c.coeffs[v];
            if cv.is_negligible() {
                continue;
            }
            let rest = (0..v).fold(T::zero(), |acc, u| acc + c.coeffs[u].clone() * y[u].clone());
            let bound = (c.rhs.clone() - rest) / cv.clone();
            if cv.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        y[v] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / T::from_int(2),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => T::zero(),
        };
    }
    Some(y)
}

/// Scales each constraint so its leading coefficient has absolute value one,
/// drops duplicates and trivially true rows. `None` on a row `0 >= positive`.
fn normalize_all<T: Scalar>(constraints: Vec<Inequality<T>>) -> Option<Vec<Inequality<T>>> {
    let mut out: Vec<Inequality<T>> = Vec::with_capacity(constraints.len());
    for c in constraints {
        let lead = c.coeffs.iter().find(|x| !x.is_negligible()).cloned();
        let c = match lead {
            None => {
                if c.rhs.is_negligible() || c.rhs.is_negative() {
                    continue;
                }
                return None;
            }
            Some(l) => {
                let s = l.abs();
                Inequality {
                    coeffs: c.coeffs.into_iter().map(|x| x / s.clone()).collect(),
                    rhs: c.rhs / s,
                }
            }
        };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|x| q(*x)).collect()
    }

    #[test]
    fn interval_and_empty_interval() {
        let mut s = LinearSystem::new(1);
        s.at_least(qs(&[1]), q(2)).at_least(qs(&[-1]), q(-5));
        let x = s.solve().unwrap();
        assert!(s.satisfied_by(&x));
        assert_eq!(x, vec![Rational::from_ratio(7, 2)]);

        let mut s = LinearSystem::new(1);
        s.at_least(qs(&[1]), q(3)).at_least(qs(&[-1]), q(-2));
        assert!(s.solve().is_none());
    }

    #[test]
    fn kernel_line_with_sign_constraints() {
        // x1 + x2 + x3 = 0, x1 + 2x2 + 3x3 = 0 has kernel span(1, -2, 1)
        let build = |signs: [i64; 3]| {
            let mut s = LinearSystem::new(3);
            s.equal(qs(&[1, 1, 1]), q(0)).equal(qs(&[1, 2, 3]), q(0));
            for (i, e) in signs.iter().enumerate() {
                let mut c = vec![q(0); 3];
                c[i] = q(*e);
                s.at_least(c, q(1));
            }
            s
        };
        let s = build([1, -1, 1]);
        let x = s.solve().unwrap();
        assert!(s.satisfied_by(&x));
        assert!(build([1, 1, -1]).solve().is_none());
        assert!(build([-1, -1, 1]).solve().is_none());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut s = LinearSystem::new(2);
        s.equal(qs(&[1, 1]), q(1)).equal(qs(&[2, 2]), q(3));
        assert!(s.solve().is_none());
    }

    #[test]
    fn triangle_is_feasible_with_witness() {
        // x >= 0, y >= 0, x + y <= 1, x - y >= 1/2
        let mut s = LinearSystem::new(2);
        s.var_at_least(0, q(0))
            .var_at_least(1, q(0))
            .at_least(qs(&[-1, -1]), q(-1))
            .at_least(qs(&[1, -1]), Rational::from_ratio(1, 2));
        let x = s.solve().unwrap();
        assert!(s.satisfied_by(&x));
        s.at_least(qs(&[0, 1]), Rational::from_ratio(1, 3));
        assert!(s.solve().is_none());
    }
}
