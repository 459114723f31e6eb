use alloc::vec;
use alloc::vec::Vec;

use crate::quantale::{validate_quantale, Elem, FiniteQuantale, RawQuantale};

/// Largest lattice the enumerator accepts.
pub const MAX_LATTICE: usize = 7;

/// A finite lattice labelled by a linear extension: `0` is the bottom, `n-1`
/// the top, and `a <= b` implies `a <= b` as numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<Elem>>,
    /// Order bits among the middle elements, in pair order.
    code: u32,
}

impl FiniteLattice {
    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        let meet = |a: Elem, b: Elem| {
            (0..n)
                .rev()
                .find(|&c| self.leq[c][a] && self.leq[c][b] && (0..n).all(|d| !(self.leq[d][a] && self.leq[d][b]) || self.leq[d][c]))
                .unwrap()
        };
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| meet(a, self.join(b, c)) == self.join(meet(a, b), meet(a, c)))))
    }
}

fn middle_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            out.push((i, j));
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

/// Relabels a strict middle order by `p`; `None` unless the result is
/// again labelled by a linear extension.
fn relabel(rel: &[Vec<bool>], p: &[usize], pairs: &[(usize, usize)]) -> Option<u32> {
    let m = rel.len();
    let mut image = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if rel[i][j] {
                if p[i] > p[j] {
                    return None;
                }
                image[p[i]][p[j]] = true;
            }
        }
    }
    Some(pairs.iter().enumerate().fold(0, |acc, (k, &(i, j))| acc | (image[i][j] as u32) << k))
}

/// Every lattice with `n` elements up to isomorphism, in increasing code order.
pub fn enumerate_lattices(n: usize) -> Vec<FiniteLattice> {
    assert!(n <= MAX_LATTICE, "lattices above {} elements are not enumerated", MAX_LATTICE);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![FiniteLattice {
            leq: vec![vec![true]],
            join: vec![vec![0]],
            code: 0,
        }];
    }
    let m = n - 2;
    let pairs = middle_pairs(m);
    let perms = permutations(m);
    let mut out = Vec::new();
    for code in 0u32..1 << pairs.len() {
        let mut rel = vec![vec![false; m]; m];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = code >> k & 1 == 1;
        }
        let transitive = (0..m).all(|i| (0..m).all(|j| !rel[i][j] || (0..m).all(|k| !rel[j][k] || rel[i][k])));
        if !transitive {
            continue;
        }
        if perms.iter().filter_map(|p| relabel(&rel, p, &pairs)).any(|c| c < code) {
            continue;
        }
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            leq[0][a] = true;
            leq[a][n - 1] = true;
            leq[a][a] = true;
        }
        for i in 0..m {
            for j in 0..m {
                if rel[i][j] {
                    leq[i + 1][j + 1] = true;
                }
            }
        }
        let mut join = vec![vec![0; n]; n];
        let mut lattice = true;
        'pairs: for a in 0..n {
            for b in 0..n {
                let lub = (0..n).find(|&c| {
                    leq[a][c] && leq[b][c] && (0..n).all(|d| !(leq[a][d] && leq[b][d]) || leq[c][d])
                });
                match lub {
                    Some(c) => join[a][b] = c,
                    None => {
                        lattice = false;
                        break 'pairs;
                    }
                }
            }
        }
        if lattice {
            out.push(FiniteLattice { leq, join, code });
        }
    }
    out
}

/// Order automorphisms of the lattice, identity first.
pub fn lattice_automorphisms(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    let n = l.size();
    if n <= 2 {
        return vec![(0..n).collect()];
    }
    permutations(n - 2)
        .into_iter()
        .map(|p| {
            let mut full = vec![0; n];
            full[n - 1] = n - 1;
            for (i, &j) in p.iter().enumerate() {
                full[i + 1] = j + 1;
            }
            full
        })
        .filter(|p| (0..n).all(|a| (0..n).all(|b| l.leq[a][b] == l.leq[p[a]][p[b]])))
        .collect()
}

struct TableSearch<'a> {
    l: &'a FiniteLattice,
    n: usize,
    cells: Vec<Option<Elem>>,
    free: Vec<(Elem, Elem)>,
    found: Vec<Vec<Elem>>,
}

impl<'a> TableSearch<'a> {
    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.cells[a * self.n + b]
    }

    /// Every constraint with all cells known that involves `(a, b)`.
    fn consistent_at(&self, a: Elem, b: Elem) -> bool {
        let n = self.n;
        let l = self.l;
        let v = self.get(a, b).unwrap();
        for c in 0..n {
            // monotone in each argument
            if let Some(w) = self.get(c, b) {
                if (l.leq[a][c] && !l.leq[v][w]) || (l.leq[c][a] && !l.leq[w][v]) {
                    return false;
                }
            }
            if let Some(w) = self.get(a, c) {
                if (l.leq[b][c] && !l.leq[v][w]) || (l.leq[c][b] && !l.leq[w][v]) {
                    return false;
                }
            }
        }
        // binary distributivity, with (a, b) in any of the three roles
        for c in 0..n {
            for d in 0..n {
                let x = l.join[c][d];
                if c == b || d == b || x == b {
                    if let (Some(p), Some(q), Some(r)) = (self.get(a, c), self.get(a, d), self.get(a, x)) {
                        if l.join[p][q] != r {
                            return false;
                        }
                    }
                }
                if c == a || d == a || x == a {
                    if let (Some(p), Some(q), Some(r)) = (self.get(c, b), self.get(d, b), self.get(x, b)) {
                        if l.join[p][q] != r {
                            return false;
                        }
                    }
                }
            }
        }
        // associativity (x·y)·z = x·(y·z), with (a, b) in any of four roles
        let assoc = |x: Elem, y: Elem, z: Elem| -> bool {
            let lhs = self.get(x, y).and_then(|p| self.get(p, z));
            let rhs = self.get(y, z).and_then(|r| self.get(x, r));
            match (lhs, rhs) {
                (Some(p), Some(q)) => p == q,
                _ => true,
            }
        };
        for z in 0..n {
            if !assoc(a, b, z) || !assoc(z, a, b) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.get(x, y) == Some(a) && !assoc(x, y, b) {
                    return false;
                }
                if self.get(x, y) == Some(b) && !assoc(a, x, y) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.free.len() {
            self.found.push(self.cells.iter().map(|c| c.unwrap()).collect());
            return;
        }
        let (a, b) = self.free[k];
        for v in 0..self.n {
            self.cells[a * self.n + b] = Some(v);
            if self.consistent_at(a, b) {
                self.run(k + 1);
            }
        }
        self.cells[a * self.n + b] = None;
    }
}

/// Multiplication tables on `l` (row-major) with `⊥` absorbing and, when
/// given, `unit` as a two-sided unit, in depth-first order.
fn tables(l: &FiniteLattice, unit: Option<Elem>) -> Vec<Vec<Elem>> {
    let n = l.size();
    let mut cells = vec![None; n * n];
    for a in 0..n {
        cells[a] = Some(0);
        cells[a * n] = Some(0);
    }
    if let Some(e) = unit {
        if e == 0 && n > 1 {
            return Vec::new();
        }
        for a in 0..n {
            if a != 0 {
                cells[e * n + a] = Some(a);
                cells[a * n + e] = Some(a);
            }
        }
    }
    let free = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| cells[a * n + b].is_none())
        .collect();
    let mut s = TableSearch {
        l,
        n,
        cells,
        free,
        found: Vec::new(),
    };
    let fixed_ok = (0..n).all(|a| (0..n).all(|b| s.get(a, b).is_none() || s.consistent_at(a, b)));
    if fixed_ok {
        s.run(0);
    }
    s.found
}

fn is_canonical(table: &[Elem], n: usize, autos: &[Vec<Elem>]) -> bool {
    autos.iter().all(|p| {
        let mut image = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                image[p[a] * n + p[b]] = p[table[a * n + b]];
            }
        }
        table <= &image[..]
    })
}

fn two_sided_unit(table: &[Elem], n: usize) -> Option<Elem> {
    (0..n).find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
}

/// Every quantale on `l` up to isomorphism. The unit, when one exists, is
/// recorded. With `unital_only`, tables are grouped by their unit.
pub fn quantales_on(l: &FiniteLattice, unital_only: bool) -> Vec<FiniteQuantale> {
    let n = l.size();
    let autos = lattice_automorphisms(l);
    let raw: Vec<Vec<Elem>> = if unital_only {
        (0..n).flat_map(|e| tables(l, Some(e))).collect()
    } else {
        tables(l, None)
    };
    raw.into_iter()
        .filter(|t| is_canonical(t, n, &autos))
        .map(|t| {
            let unit = two_sided_unit(&t, n);
            validate_quantale(&RawQuantale {
                leq: l.leq.clone(),
                mult: t.chunks(n).map(|r| r.to_vec()).collect(),
                unit,
            })
            .expect("enumerated table is a quantale")
        })
        .collect()
}

/// Every quantale with at most `max_size` elements up to isomorphism, ordered
/// by size, then lattice code, then (for unital) unit, then table search
/// order.
pub fn enumerate_quantales(max_size: usize, unital_only: bool) -> Vec<FiniteQuantale> {
    (1..=max_size)
        .flat_map(enumerate_lattices)
        .flat_map(|l| quantales_on(&l, unital_only))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        // known numbers of unlabelled lattices
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_lattices(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn non_distributive_lattices_of_five() {
        let nd = enumerate_lattices(5).into_iter().filter(|l| !l.is_distributive()).count();
        assert_eq!(nd, 2);
    }

    #[test]
    fn small_quantales() {
        assert_eq!(enumerate_quantales(1, false).len(), 1);
        let unital2 = enumerate_quantales(2, true);
        assert_eq!(unital2.len(), 2);
        assert_eq!(unital2[1], FiniteQuantale::chain_locale(2));
    }

    #[test]
    fn residuated_lattice_counts() {
        // finite unital quantales are exactly the finite residuated lattices;
        // published counts, all and commutative integral
        let mut all = Vec::new();
        let mut comm_integral = Vec::new();
        for n in 1..=5 {
            let qs = enumerate_quantales(n, true);
            let qs: Vec<_> = qs.into_iter().filter(|q| q.size() == n).collect();
            all.push(qs.len());
            comm_integral.push(qs.iter().filter(|q| q.is_commutative() && q.unit() == Some(q.top())).count());
        }
        assert_eq!(all, [1, 1, 3, 20, 149]);
        assert_eq!(comm_integral, [1, 1, 2, 7, 26]);
    }
}
