//! Naive reference enumeration of unital rings, independent of the
//! generator-product search: fill whole multiplication tables cell by cell
//! over hand-listed additive groups, prune on every fully-determined axiom
//! instance, and deduplicate by pairwise isomorphism search.

use ringlab::{isomorphic, FiniteRing};

/// Additive groups as lists of cyclic factor orders, written out by hand.
fn groups(n: usize) -> Vec<Vec<usize>> {
    match n {
        1 => vec![vec![]],
        2 => vec![vec![2]],
        3 => vec![vec![3]],
        4 => vec![vec![4], vec![2, 2]],
        5 => vec![vec![5]],
        6 => vec![vec![2, 3]],
        7 => vec![vec![7]],
        _ => panic!("oracle only covers orders 1..=7"),
    }
}

fn add_table(factors: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = factors.iter().product();
    let digits = |mut i: usize| {
        let mut d = vec![0; factors.len()];
        for k in (0..factors.len()).rev() {
            d[k] = i % factors[k];
            i /= factors[k];
        }
        d
    };
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (da, db) = (digits(a), digits(b));
                    (0..factors.len()).fold(0, |acc, k| acc * factors[k] + (da[k] + db[k]) % factors[k])
                })
                .collect()
        })
        .collect()
}

struct Filler<'a> {
    n: usize,
    add: &'a [Vec<usize>],
    mul: Vec<Vec<Option<usize>>>,
    free: Vec<(usize, usize)>,
    found: Vec<Vec<Vec<usize>>>,
}

impl Filler<'_> {
    fn consistent(&self) -> bool {
        let n = self.n;
        let m = |x: usize, y: usize| self.mul[x][y];
        let a = |x: usize, y: usize| self.add[x][y];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(xy), Some(xz), Some(xyz)) = (m(x, y), m(x, z), m(x, a(y, z))) {
                        if xyz != a(xy, xz) {
                            return false;
                        }
                    }
                    if let (Some(xz), Some(yz), Some(sz)) = (m(x, z), m(y, z), m(a(x, y), z)) {
                        if sz != a(xz, yz) {
                            return false;
                        }
                    }
                    if let (Some(xy), Some(yz)) = (m(x, y), m(y, z)) {
                        if let (Some(l), Some(r)) = (m(xy, z), m(x, yz)) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, k: usize) {
        if !self.consistent() {
            return;
        }
        if k == self.free.len() {
            self.found.push(self.mul.iter().map(|row| row.iter().map(|c| c.unwrap()).collect()).collect());
            return;
        }
        let (i, j) = self.free[k];
        for v in 0..self.n {
            self.mul[i][j] = Some(v);
            self.fill(k + 1);
        }
        self.mul[i][j] = None;
    }
}

/// All unital rings of order `n` (1..=7), one per isomorphism class.
pub fn naive_unital_rings(n: usize) -> Vec<FiniteRing> {
    let mut classes: Vec<FiniteRing> = Vec::new();
    for factors in groups(n) {
        let add = add_table(&factors);
        let ones: Vec<usize> = if n == 1 { vec![0] } else { (1..n).collect() };
        for one in ones {
            let mut mul = vec![vec![None; n]; n];
            for x in 0..n {
                mul[0][x] = Some(0);
                mul[x][0] = Some(0);
                mul[one][x] = Some(x);
                mul[x][one] = Some(x);
            }
            let free = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| mul[i][j].is_none())
                .collect();
            let mut f = Filler { n, add: &add, mul, free, found: Vec::new() };
            f.fill(0);
            for table in f.found {
                let ring = FiniteRing::from_tables(n, &add, &table, 0, one, "oracle")
                    .expect("every filled table satisfies the axioms");
                if !classes.iter().any(|c| isomorphic(c, &ring).is_some()) {
                    classes.push(ring);
                }
            }
        }
    }
    classes
}
