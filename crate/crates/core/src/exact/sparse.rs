use std::collections::BTreeMap;
use std::fmt;

use super::{GaussianRational as Q, Matrix};

/// Finitely supported vector indexed by an ordered key; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sparse<K: Ord>(BTreeMap<K, Q>);

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Self(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut s = Self::new();
        s.add_term(k, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Q)>) -> Self {
        let mut s = Self::new();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: &K) -> Q {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Sparse<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, x) in other.iter() {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&mut self, other: &Sparse<K>) {
        self.add_scaled(other, &Q::one())
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self(self.0.iter().map(|(k, x)| (k.clone(), x * c)).collect())
    }

    pub fn difference(&self, other: &Sparse<K>) -> Self {
        let mut d = self.clone();
        d.add_scaled(other, &-Q::one());
        d
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|(k, x)| (k.clone(), x.conj())).collect())
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        Self(
            self.0
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, x)| (k.clone(), x.clone()))
                .collect(),
        )
    }

    /// Linear extension of a map on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Applies a linear functional given on keys.
    pub fn pair_with(&self, mut f: impl FnMut(&K) -> Q) -> Q {
        self.iter().map(|(k, c)| c * &f(k)).sum()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Sparse<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// Groups the columns of a sparse map into blocks that share no row key.
fn connected_blocks<K: Ord + Clone>(cols: &[Sparse<K>]) -> Vec<(Vec<usize>, Vec<K>)> {
    let mut parent: Vec<usize> = (0..cols.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: BTreeMap<&K, usize> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        for k in col.keys() {
            match owner.get(k) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(k, j);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<K>)> = BTreeMap::new();
    for j in 0..cols.len() {
        let root = find(&mut parent, j);
        blocks.entry(root).or_default().0.push(j);
    }
    for (k, o) in owner {
        let root = find(&mut parent, o);
        blocks
            .get_mut(&root)
            .expect("owner belongs to a block")
            .1
            .push(k.clone());
    }
    blocks.into_values().collect()
}

fn dense_block<K: Ord + Clone>(cols: &[Sparse<K>], members: &[usize], rows: &[K]) -> Matrix {
    let index: BTreeMap<&K, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zeros(rows.len(), members.len());
    for (c, &j) in members.iter().enumerate() {
        for (k, x) in cols[j].iter() {
            m[(index[k], c)] = x.clone();
        }
    }
    m
}

/// Rank of the linear map whose columns are `cols`.
pub fn sparse_rank<K: Ord + Clone>(cols: &[Sparse<K>]) -> usize {
    connected_blocks(cols)
        .iter()
        .map(|(members, rows)| {
            if rows.is_empty() {
                0
            } else {
                dense_block(cols, members, rows).rank()
            }
        })
        .sum()
}

/// Inverse of a square sparse map. `domain[j]` is the key of column `j`; the result maps
/// each codomain key to its preimage. `None` if the map is not bijective onto the span of
/// its image keys or the image has a different size than the domain.
pub fn sparse_inverse<D: Ord + Clone, C: Ord + Clone>(
    domain: &[D],
    cols: &[Sparse<C>],
) -> Option<BTreeMap<C, Sparse<D>>> {
    assert_eq!(domain.len(), cols.len(), "one column per domain key");
    let mut out = BTreeMap::new();
    for (members, rows) in connected_blocks(cols) {
        if members.len() != rows.len() {
            return None;
        }
        let inv = dense_block(cols, &members, &rows).inverse()?;
        for (r, key) in rows.iter().enumerate() {
            let pre = members
                .iter()
                .enumerate()
                .map(|(c, &j)| (domain[j].clone(), inv[(c, r)].clone()));
            out.insert(key.clone(), Sparse::from_terms(pre));
        }
    }
    Some(out)
}

/// Incrementally built row echelon form over unknowns `0..unknowns`.
///
/// Rows are linear equations `Σ a_k x_k = 0`; an affine equation `Σ a_k x_k = b` is pushed
/// with `push_affine`, which stores `-b` in the extra column `unknowns`.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    unknowns: usize,
    rows: BTreeMap<usize, Sparse<usize>>,
}

impl RowEchelon {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: BTreeMap::new(),
        }
    }

    /// Adds a homogeneous equation; returns whether it was independent of earlier ones.
    pub fn push(&mut self, mut row: Sparse<usize>) -> bool {
        loop {
            let Some((&k, c)) = row.iter().next() else {
                return false;
            };
            let c = c.clone();
            match self.rows.get(&k) {
                Some(pivot) => row.add_scaled(pivot, &-c),
                None => {
                    let inv = c.inv().expect("leading coefficient is nonzero");
                    self.rows.insert(k, row.scaled(&inv));
                    return true;
                }
            }
        }
    }

    pub fn push_affine(&mut self, mut row: Sparse<usize>, rhs: &Q) -> bool {
        row.add_term(self.unknowns, -rhs.clone());
        self.push(row)
    }

    /// Rank of the homogeneous part.
    pub fn rank(&self) -> usize {
        self.rows.keys().filter(|&&k| k < self.unknowns).count()
    }

    pub fn is_consistent(&self) -> bool {
        !self.rows.contains_key(&self.unknowns)
    }

    fn back_substitute(&self, seed: impl Fn(usize) -> Q) -> Vec<Q> {
        let mut v: Vec<Q> = (0..=self.unknowns).map(&seed).collect();
        for (&p, row) in self.rows.iter().rev() {
            v[p] = -row
                .iter()
                .filter(|(k, _)| **k > p)
                .map(|(k, c)| c * &v[*k])
                .sum::<Q>();
        }
        v.truncate(self.unknowns);
        v
    }

    /// Null space basis of the homogeneous part, one vector per free unknown.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        (0..self.unknowns)
            .filter(|k| !self.rows.contains_key(k))
            .map(|f| self.back_substitute(|k| if k == f { Q::one() } else { Q::zero() }))
            .collect()
    }

    /// A solution of the affine system with all free unknowns zero.
    pub fn particular(&self) -> Option<Vec<Q>> {
        let n = self.unknowns;
        self.is_consistent()
            .then(|| self.back_substitute(|k| if k == n { Q::one() } else { Q::zero() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_pruned() {
        let mut v = Sparse::basis(1u32);
        v.add_term(1, -Q::one());
        assert!(v.is_zero());
        v.add_term(2, Q::zero());
        assert!(v.is_empty());
    }

    #[test]
    fn block_rank_matches_dense_rank() {
        let cols = vec![
            Sparse::from_terms([(0u8, Q::one()), (1, Q::one())]),
            Sparse::from_terms([(0u8, Q::from(2)), (1, Q::from(2))]),
            Sparse::basis(5u8),
            Sparse::new(),
        ];
        assert_eq!(sparse_rank(&cols), 2);
    }

    #[test]
    fn row_echelon_matches_dense_solver() {
        // x0 + x1 = 2, x1 - x2 = 1
        let mut e = RowEchelon::new(3);
        assert!(e.push_affine(
            Sparse::from_terms([(0, Q::one()), (1, Q::one())]),
            &Q::from(2)
        ));
        assert!(e.push_affine(
            Sparse::from_terms([(1, Q::one()), (2, -Q::one())]),
            &Q::one()
        ));
        assert!(!e.push_affine(
            Sparse::from_terms([(0, Q::one()), (2, Q::one())]),
            &Q::one()
        ));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.particular().unwrap(), vec![Q::one(), Q::one(), Q::zero()]);
        assert_eq!(e.kernel(), vec![vec![-Q::one(), Q::one(), Q::one()]]);
        e.push_affine(
            Sparse::from_terms([(0, Q::one()), (2, Q::one())]),
            &Q::zero(),
        );
        assert!(!e.is_consistent());
        assert!(e.particular().is_none());
    }

    #[test]
    fn permutation_inverse() {
        let domain = ["a", "b", "c"];
        let cols = vec![
            Sparse::basis(2u8),
            Sparse::basis(0u8),
            Sparse::term(1u8, Q::from(3)),
        ];
        let inv = sparse_inverse(&domain, &cols).unwrap();
        assert_eq!(inv[&2], Sparse::basis("a"));
        assert_eq!(inv[&1], Sparse::term("c", Q::from_ratio(1, 3)));
        let singular = vec![Sparse::basis(0u8), Sparse::basis(0u8)];
        assert!(sparse_inverse(&["x", "y"], &singular).is_none());
    }
}
