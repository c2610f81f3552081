use super::FinPoset;

/// Linear extensions in lexicographic order of their vertex sequences.
pub struct LinearExtensions<'a> {
    poset: &'a FinPoset,
    prefix: Vec<usize>,
    placed: Vec<bool>,
    // the next candidate to try at each depth
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    pub(super) fn new(poset: &'a FinPoset) -> Self {
        let n = poset.n();
        LinearExtensions {
            poset,
            prefix: Vec::with_capacity(n),
            placed: vec![false; n],
            cursor: vec![0],
            done: false,
        }
    }

    fn available(&self, x: usize) -> bool {
        !self.placed[x] && (0..self.poset.n()).all(|y| self.placed[y] || !self.poset.lt(y, x))
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.poset.n();
        while !self.done {
            if self.prefix.len() == n {
                let out = self.prefix.clone();
                self.backtrack();
                return Some(out);
            }
            let depth = self.prefix.len();
            let start = self.cursor[depth];
            match (start..n).find(|&x| self.available(x)) {
                Some(x) => {
                    self.cursor[depth] = x + 1;
                    self.prefix.push(x);
                    self.placed[x] = true;
                    self.cursor.push(0);
                }
                None => self.backtrack(),
            }
        }
        None
    }
}

impl LinearExtensions<'_> {
    fn backtrack(&mut self) {
        self.cursor.pop();
        match self.prefix.pop() {
            Some(x) => self.placed[x] = false,
            None => self.done = true,
        }
    }
}
