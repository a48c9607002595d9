//! Integer matrices for relation checks.

use nalgebra::DMatrix;

use super::CstarError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix(pub DMatrix<i64>);

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.0[(i, j)] = v;
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        ExactMatrix(&self.0 * &other.0)
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        ExactMatrix(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        ExactMatrix(&self.0 - &other.0)
    }

    /// Transpose; all entries are real.
    pub fn adjoint(&self) -> ExactMatrix {
        ExactMatrix(self.0.transpose())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_projection(&self) -> bool {
        self.adjoint() == *self && self.mul(self) == *self
    }

    pub fn is_partial_isometry(&self) -> bool {
        self.mul(&self.adjoint()).mul(self) == *self
    }
}

/// `s ∨ t = s + t − t s*s`, folded over the list. Each step requires the
/// initial and final projections to commute and `s t*t = t s*s`.
pub fn vee_join(ops: &[ExactMatrix]) -> Result<ExactMatrix, CstarError> {
    let Some(first) = ops.first() else {
        return Err(CstarError::Shape("empty join".into()));
    };
    let n = first.dim();
    if ops.iter().any(|o| o.dim() != n) {
        return Err(CstarError::Shape("operands differ in size".into()));
    }
    let mut acc = first.clone();
    for (k, t) in ops.iter().enumerate().skip(1) {
        let s = &acc;
        let (ss, tt) = (s.adjoint().mul(s), t.adjoint().mul(t));
        let (sf, tf) = (s.mul(&s.adjoint()), t.mul(&t.adjoint()));
        if ss.mul(&tt) != tt.mul(&ss) {
            return Err(CstarError::JoinPrecondition(format!("initial projections do not commute at operand {k}")));
        }
        if sf.mul(&tf) != tf.mul(&sf) {
            return Err(CstarError::JoinPrecondition(format!("final projections do not commute at operand {k}")));
        }
        if s.mul(&tt) != t.mul(&ss) {
            return Err(CstarError::JoinPrecondition(format!("s t*t ≠ t s*s at operand {k}")));
        }
        acc = s.add(t).sub(&t.mul(&ss));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[i64]) -> ExactMatrix {
        let n = entries.len();
        let mut m = ExactMatrix::zeros(n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    #[test]
    fn joins_of_projections() {
        let p = diag(&[1, 0, 0]);
        let q = diag(&[0, 1, 0]);
        assert_eq!(vee_join(&[p.clone(), q.clone()]).unwrap(), p.add(&q));
        assert_eq!(vee_join(&[p.clone(), p.clone()]).unwrap(), p);
        let r = diag(&[1, 1, 0]);
        assert_eq!(vee_join(&[p, r.clone()]).unwrap(), r);
    }

    #[test]
    fn incompatible_partial_isometries() {
        // Two different maps out of the same vector.
        let mut s = ExactMatrix::zeros(2);
        s.set(0, 0, 1);
        let mut t = ExactMatrix::zeros(2);
        t.set(1, 0, 1);
        assert!(matches!(vee_join(&[s, t]), Err(CstarError::JoinPrecondition(_))));
    }
}
