//! Dense linear algebra over the two-element field.

/// Bit vector with xor as addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitVector {
    words: Vec<u64>,
}

impl BitVector {
    pub(crate) fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[cfg(test)]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the highest set bit.
    pub(crate) fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Rank of the matrix whose rows are `rows`, by Gaussian elimination.
pub(crate) fn rank(rows: Vec<BitVector>) -> usize {
    let Some(width) = rows.first().map(|r| r.words.len() * 64) else {
        return 0;
    };
    let mut pivots: Vec<Option<BitVector>> = vec![None; width];
    let mut rank = 0;
    for mut row in rows {
        while let Some(h) = row.highest() {
            match &pivots[h] {
                Some(p) => row.xor_assign(p),
                None => {
                    pivots[h] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
