use alloc::vec::Vec;

/// Basis word `e_{i0} de_{i1} ⋯ de_{in}` of `Ω^u_n(A) ≅ A ⊗ Ā^{⊗n}`.
///
/// Stored as `(degree, index)` where `index` reads the letters as digits:
/// `i0` in base `m` followed by `i1 - 1, …, in - 1` in base `m - 1`. Within
/// a degree the index order is the lexicographic order on letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub degree: usize,
    pub index: usize,
}

impl Word {
    pub fn new(degree: usize, index: usize) -> Self {
        Word { degree, index }
    }

    /// The degree-0 word `e_i`.
    pub fn element(i: usize) -> Self {
        Word { degree: 0, index: i }
    }

    /// Builds from letters `[i0, i1, …, in]`; `None` if out of range.
    pub fn from_letters(dim: usize, letters: &[usize]) -> Option<Self> {
        let (&head, tail) = letters.split_first()?;
        if head >= dim || tail.iter().any(|&l| l == 0 || l >= dim) {
            return None;
        }
        let r = dim - 1;
        let mut index = head;
        for &l in tail {
            index = index * r + (l - 1);
        }
        Some(Word { degree: tail.len(), index })
    }

    pub fn letters(&self, dim: usize) -> Vec<usize> {
        let r = dim - 1;
        let mut out = Vec::with_capacity(self.degree + 1);
        let mut idx = self.index;
        for _ in 0..self.degree {
            out.push(idx % r + 1);
            idx /= r;
        }
        out.push(idx);
        out.reverse();
        out
    }

    pub fn head(&self, dim: usize) -> usize {
        self.index / reduced_pow(dim, self.degree)
    }

    /// Index of the trailing d-letters as a word of their own.
    pub fn tail_index(&self, dim: usize) -> usize {
        self.index % reduced_pow(dim, self.degree)
    }
}

/// `(m - 1)^n`, with `0^0 = 1`.
pub fn reduced_pow(dim: usize, n: usize) -> usize {
    (dim - 1).pow(n as u32)
}

/// `dim Ω^u_n(A) = m (m - 1)^n`.
pub fn dimension(dim: usize, n: usize) -> usize {
    dim * reduced_pow(dim, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip() {
        let w = Word::from_letters(4, &[2, 1, 3, 3]).unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(w.letters(4), [2, 1, 3, 3]);
        assert_eq!(w.head(4), 2);
        assert!(Word::from_letters(4, &[1, 0]).is_none());
        assert!(Word::from_letters(4, &[4]).is_none());
        for idx in 0..dimension(3, 3) {
            let w = Word::new(3, idx);
            assert_eq!(Word::from_letters(3, &w.letters(3)), Some(w));
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(1, 1), 0);
        assert_eq!(dimension(1, 0), 1);
        for n in 0..6 {
            assert_eq!(dimension(2, n), 2);
        }
        assert_eq!(dimension(4, 2), 36);
    }
}
