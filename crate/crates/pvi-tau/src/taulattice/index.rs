//! The two index systems of the lattice and the bijection between them.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("index {0:?} has odd coordinate sum")]
pub struct OddParity(pub [i64; 4]);

/// `(k0, k1, k2, k3)` with even sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KIndex([i64; 4]);

impl KIndex {
    pub fn new(k: [i64; 4]) -> Result<Self, OddParity> {
        if k.iter().sum::<i64>().rem_euclid(2) != 0 {
            return Err(OddParity(k));
        }
        Ok(KIndex(k))
    }

    pub fn k(&self) -> [i64; 4] {
        self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn n(&self) -> i64 {
        self.0.iter().sum::<i64>() / 2
    }

    /// Adds an offset whose coordinate sum is even.
    pub fn offset(&self, d: [i64; 4]) -> Self {
        debug_assert_eq!(d.iter().sum::<i64>().rem_euclid(2), 0);
        KIndex([self.0[0] + d[0], self.0[1] + d[1], self.0[2] + d[2], self.0[3] + d[3]])
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn to_l(&self) -> LIndex {
        let [k0, k1, k2, k3] = self.0;
        let n = self.n();
        LIndex([k1 + k3 - n, -k1, k0 + k1 - n, k1 + k2 - n])
    }
}

impl fmt::Display for KIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// `(l1, l2, l3, l4)`; `l0 = −(l1 + 2 l2 + l3 + l4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LIndex([i64; 4]);

impl LIndex {
    pub fn new(l: [i64; 4]) -> Self {
        LIndex(l)
    }

    pub fn l(&self) -> [i64; 4] {
        self.0
    }

    pub fn l0(&self) -> i64 {
        let [l1, l2, l3, l4] = self.0;
        -(l1 + 2 * l2 + l3 + l4)
    }

    /// `(l0, l1, l2, l3, l4)`.
    pub fn full(&self) -> [i64; 5] {
        let [l1, l2, l3, l4] = self.0;
        [self.l0(), l1, l2, l3, l4]
    }

    pub fn offset(&self, d: [i64; 4]) -> Self {
        LIndex([self.0[0] + d[0], self.0[1] + d[1], self.0[2] + d[2], self.0[3] + d[3]])
    }

    pub fn to_k(&self) -> KIndex {
        let [l1, l2, l3, l4] = self.0;
        let l0 = self.l0();
        KIndex([l0 + l2 + l3, -l2, l0 + l2 + l4, l0 + l1 + l2])
    }
}

impl fmt::Display for LIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(LIndex::new([0; 4]).to_k(), KIndex::new([0; 4]).unwrap());
        let l = KIndex::new([1, -1, 0, 0]).unwrap().to_l();
        assert_eq!(l, LIndex::new([-1, 1, 0, -1]));
        assert_eq!(l.l0(), 0);
        let l = KIndex::new([0, -1, -1, 0]).unwrap().to_l();
        assert_eq!(l, LIndex::new([0, 1, 0, -1]));
        assert_eq!(l.to_k().k(), [0, -1, -1, 0]);
        assert!(KIndex::new([1, 0, 0, 0]).is_err());
    }

    #[test]
    fn bijection_on_a_box() {
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    for d in -3..=3 {
                        let l = LIndex::new([a, b, c, d]);
                        assert_eq!(l.to_k().to_l(), l);
                        if (a + b + c + d) % 2 == 0 {
                            let k = KIndex::new([a, b, c, d]).unwrap();
                            assert_eq!(k.to_l().to_k(), k);
                        }
                    }
                }
            }
        }
    }
}
