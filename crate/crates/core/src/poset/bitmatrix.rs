/// A dense square boolean matrix stored as rows of 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Warshall's algorithm, a row at a time.
    pub fn close_transitively(&mut self) {
        for k in 0..self.n {
            let rk = self.row(k).to_vec();
            for i in 0..self.n {
                if self.get(i, k) {
                    let ri = &mut self.data[i * self.words..(i + 1) * self.words];
                    for (a, b) in ri.iter_mut().zip(&rk) {
                        *a |= b;
                    }
                }
            }
        }
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        BitMatrix {
            n: self.n,
            words: self.words,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// All set positions in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.row_iter(i).map(move |j| (i, j)))
            .collect()
    }

    /// The submatrix on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut m = BitMatrix::new(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.get(i, j) {
                    m.set(a, b);
                }
            }
        }
        m
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BitMatrix")
            .field("n", &self.n)
            .field("pairs", &self.pairs())
            .finish()
    }
}
