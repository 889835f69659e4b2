/// Dense square bit matrix, one packed row per index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1 << (j % 64));
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> usize {
        count_ones(self.row(i))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BitMatrix").field("n", &self.n).finish()
    }
}

pub fn count_ones(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let bit = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + bit)
        })
    })
}

/// `true` when every bit of `sub` is also set in `sup`.
pub fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(a, b)| a & !b == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_iterate() {
        let mut m = BitMatrix::new(130);
        m.set(3, 0);
        m.set(3, 64);
        m.set(3, 129);
        assert!(m.get(3, 64));
        assert!(!m.get(3, 65));
        assert_eq!(iter_ones(m.row(3)).collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(m.row_count(3), 3);
        m.clear(3, 64);
        assert_eq!(m.row_count(3), 2);
    }
}
