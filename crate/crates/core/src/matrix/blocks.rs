use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Ring};

use super::Matrix;

/// Named block matrices with `n×n` identity blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockConstant {
    /// diag(1_p, −1_q).
    Ipq(usize, usize),
    /// [[0, 1], [−1, 0]].
    J(usize),
    /// [[0, 1], [1, 0]].
    F(usize),
    /// J·F = [[1, 0], [0, −1]].
    I(usize),
}

fn two_by_two(n: usize, ring: Ring, a: i64, b: i64, c: i64, d: i64) -> Result<Matrix> {
    let blk = |v: i64| Matrix::identity(n, ring).scale(&Rational::from_int(v));
    Matrix::from_blocks(&blk(a), &blk(b), &blk(c), &blk(d))
}

pub fn block_constant(name: BlockConstant, ring: Ring) -> Result<Matrix> {
    match name {
        BlockConstant::Ipq(p, q) => {
            if p + q == 0 {
                return Err(Error::InvalidSize("I_pq needs p + q > 0".into()));
            }
            let mut m = Matrix::identity(p + q, ring);
            for i in p..p + q {
                m.set(i, i, &crate::scalar::Scalar::int(ring, -1))?;
            }
            Ok(m)
        }
        BlockConstant::J(0) | BlockConstant::F(0) | BlockConstant::I(0) => {
            Err(Error::InvalidSize("block size must be positive".into()))
        }
        BlockConstant::J(n) => two_by_two(n, ring, 0, 1, -1, 0),
        BlockConstant::F(n) => two_by_two(n, ring, 0, 1, 1, 0),
        BlockConstant::I(n) => two_by_two(n, ring, 1, 0, 0, -1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices() {
        let j = block_constant(BlockConstant::J(1), Ring::Q).unwrap();
        let f = block_constant(BlockConstant::F(1), Ring::Q).unwrap();
        let i = block_constant(BlockConstant::I(1), Ring::Q).unwrap();
        assert_eq!(j, Matrix::from_ints(2, 2, Ring::Q, &[0, 1, -1, 0]).unwrap());
        assert_eq!(f, Matrix::from_ints(2, 2, Ring::Q, &[0, 1, 1, 0]).unwrap());
        assert_eq!(i, Matrix::from_ints(2, 2, Ring::Q, &[1, 0, 0, -1]).unwrap());
        assert_eq!(j.matmul(&f).unwrap(), i);
    }

    #[test]
    fn squares() {
        for n in 1..=3 {
            let one = Matrix::identity(2 * n, Ring::Q);
            let j = block_constant(BlockConstant::J(n), Ring::Q).unwrap();
            let f = block_constant(BlockConstant::F(n), Ring::Q).unwrap();
            assert_eq!(j.matmul(&j).unwrap(), one.neg());
            assert_eq!(f.matmul(&f).unwrap(), one);
            let ipq = block_constant(BlockConstant::Ipq(n, 1), Ring::QI).unwrap();
            assert_eq!(ipq.matmul(&ipq).unwrap(), Matrix::identity(n + 1, Ring::QI));
        }
        assert!(block_constant(BlockConstant::J(0), Ring::Q).is_err());
    }
}
