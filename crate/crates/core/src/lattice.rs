//! Integer lattices `L ⊆ Zⁿ` that contain `e·Zⁿ` for a fixed modulus `e`.
//!
//! Every lattice here carries an upper-triangular basis whose diagonal
//! entries divide `e`. Because `e·Zⁿ ⊆ L`, any coordinate may be reduced
//! modulo `e` at any time without leaving the coset, which keeps every entry
//! in `[0, e)` and rules out coefficient growth.

#![allow(clippy::needless_range_loop)]

/// Returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b) > 0`; `a`, `b` not both zero.
pub(crate) fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Like [`egcd`], but returns the trivial combination when `x | y`, so that
/// eliminating an already divisible entry leaves the pivot row untouched.
fn divisor_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y % x == 0 {
        (x, 1, 0)
    } else {
        egcd(x, y)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    egcd(a, b).0
}

#[derive(Debug, Clone)]
pub(crate) struct ModLattice {
    modulus: i64,
    rows: Vec<Vec<i64>>,
}

impl ModLattice {
    /// The lattice `e·Zⁿ`.
    pub(crate) fn new(dim: usize, modulus: i64) -> Self {
        assert!(modulus >= 1);
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![0; dim];
                r[i] = modulus;
                r
            })
            .collect();
        ModLattice { modulus, rows }
    }

    pub(crate) fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub(crate) fn diagonal(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().enumerate().map(|(i, r)| r[i])
    }

    /// Adds `v` to the generating set.
    pub(crate) fn insert(&mut self, v: &[i64]) {
        let e = self.modulus;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        for i in 0..self.rows.len() {
            if v[i] == 0 {
                continue;
            }
            let a = self.rows[i][i];
            let b = v[i];
            let (g, s, t) = egcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let row = &mut self.rows[i];
            for j in i..row.len() {
                let (r, x) = (row[j], v[j]);
                row[j] = (s * r + t * x).rem_euclid(e);
                v[j] = (ag * x - bg * r).rem_euclid(e);
            }
            // The pivot is g itself, which divides e; rem_euclid only matters when g == e.
            row[i] = g;
            debug_assert_eq!(v[i], 0);
        }
    }

    /// Canonical representative of `v + L`, with `0 ≤ x_i < diag_i`.
    pub(crate) fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let e = self.modulus;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let q = v[i].div_euclid(row[i]);
            if q != 0 {
                for j in i..v.len() {
                    v[j] = (v[j] - q * row[j]).rem_euclid(e);
                }
            }
            v[i] = v[i].rem_euclid(row[i]);
        }
        v
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v ∈ L` in the basis, modulo `e`; `None` if `v ∉ L`.
    ///
    /// The residual is kept exact: shifting it by `e·Zⁿ` would move the
    /// coordinates by vectors outside `e·Zⁿ`. Reducing the coefficients
    /// instead moves `v` only within `e·L`, and keeps entries below `n·e²`.
    pub(crate) fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let e = self.modulus;
        let mut v = v.to_vec();
        let mut coords = vec![0; v.len()];
        for (i, row) in self.rows.iter().enumerate() {
            if v[i] % row[i] != 0 {
                return None;
            }
            let c = (v[i] / row[i]).rem_euclid(e);
            coords[i] = c;
            for j in i..v.len() {
                v[j] -= c * row[j];
            }
            if v[i] % e != 0 {
                return None;
            }
            v[i] = 0;
        }
        Some(coords)
    }

    /// The sublattice of vectors vanishing on the first `skip` coordinates,
    /// projected onto the remaining ones.
    pub(crate) fn tail(&self, skip: usize) -> ModLattice {
        ModLattice {
            modulus: self.modulus,
            rows: self.rows[skip..]
                .iter()
                .map(|r| r[skip..].to_vec())
                .collect(),
        }
    }
}

/// Smith normal form of the lattice spanned by `rows` together with `e·Zⁿ`.
#[derive(Debug, Clone)]
pub(crate) struct SmithForm {
    /// Invariant factors `gcd(d_i, e)`, in divisibility order; 1 marks a trivial factor.
    pub(crate) factors: Vec<i64>,
    /// Row `i` is the coordinate vector of the generator of the `i`-th factor.
    pub(crate) generators: Vec<Vec<i64>>,
}

/// Computes `Zⁿ / (span(rows) + e·Zⁿ) ≅ ⊕ Z/factor_i` with explicit generators.
pub(crate) fn smith_mod(rows: &[Vec<i64>], ncols: usize, e: i64) -> SmithForm {
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(e)).collect())
        .collect();
    let m = a.len();
    let mut vinv: Vec<Vec<i64>> = (0..ncols)
        .map(|i| {
            let mut r = vec![0; ncols];
            r[i] = 1;
            r
        })
        .collect();
    let mut diag = vec![0i64; ncols];

    let reduce_row = |row: &mut Vec<i64>| row.iter_mut().for_each(|x| *x = x.rem_euclid(e));

    for t in 0..ncols.min(m) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (r, row) in a.iter().enumerate().skip(t) {
                for (c, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && pivot.is_none_or(|(pr, pc)| x < a[pr][pc]) {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            a.swap(t, pr);
            if pc != t {
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                vinv.swap(t, pc);
            }

            for r in t + 1..m {
                let y = a[r][t];
                if y == 0 {
                    continue;
                }
                let x = a[t][t];
                let (g, s, u) = divisor_gcd(x, y);
                let (xg, yg) = (x / g, y / g);
                for c in t..ncols {
                    let (p, q) = (a[t][c], a[r][c]);
                    a[t][c] = s * p + u * q;
                    a[r][c] = xg * q - yg * p;
                }
                reduce_row(&mut a[t]);
                reduce_row(&mut a[r]);
            }

            for c in t + 1..ncols {
                let y = a[t][c];
                if y == 0 {
                    continue;
                }
                let x = a[t][t];
                let (g, s, u) = divisor_gcd(x, y);
                let (xg, yg) = (x / g, y / g);
                for row in a.iter_mut() {
                    let (p, q) = (row[t], row[c]);
                    row[t] = (s * p + u * q).rem_euclid(e);
                    row[c] = (xg * q - yg * p).rem_euclid(e);
                }
                let (rt, rc) = (vinv[t].clone(), vinv[c].clone());
                for k in 0..ncols {
                    vinv[t][k] = (xg * rt[k] + yg * rc[k]).rem_euclid(e);
                    vinv[c][k] = (s * rc[k] - u * rt[k]).rem_euclid(e);
                }
            }

            if (t + 1..m).any(|r| a[r][t] != 0) {
                continue;
            }
            let p = a[t][t];
            let offender = (t + 1..m).find(|&r| a[r][t + 1..].iter().any(|&x| x % p != 0));
            match offender {
                Some(r) => {
                    for c in t..ncols {
                        a[t][c] = (a[t][c] + a[r][c]).rem_euclid(e);
                    }
                }
                None => break,
            }
        }
        diag[t] = a.get(t).map_or(0, |row| row[t]);
    }

    let factors = diag
        .iter()
        .map(|&d| if d == 0 { e } else { gcd(d, e) })
        .collect();
    SmithForm {
        factors,
        generators: vinv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn egcd_identity() {
        for a in 0..20 {
            for b in 0..20 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, s, t) = egcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert!(g > 0 && a % g == 0 && b % g == 0);
            }
        }
    }

    #[test]
    fn lattice_index_of_single_vector() {
        // (1, 2) + 4Z² has index 4 in Z².
        let mut l = ModLattice::new(2, 4);
        l.insert(&[1, 2]);
        assert_eq!(l.diagonal().product::<i64>(), 4);
        assert!(l.contains(&[3, 6]));
        assert!(!l.contains(&[0, 1]));
        assert!(l.contains(&[0, 4]));
    }

    #[test]
    fn smith_of_diagonal_relations() {
        // Z³ / <(2,0,0), (0,3,0)> + 6Z³ ≅ Z/1 ⊕ Z/6 ⊕ Z/6 after regrouping Z/2 ⊕ Z/3 ⊕ Z/6.
        let sf = smith_mod(&[vec![2, 0, 0], vec![0, 3, 0]], 3, 6);
        let mut f: Vec<i64> = sf.factors.into_iter().filter(|&x| x > 1).collect();
        f.sort();
        assert_eq!(f, vec![6, 6]);
    }

    /// Enumerates Zⁿ/(span + eZⁿ) directly on the finite box [0, e)ⁿ.
    fn brute_quotient_order(rows: &[Vec<i64>], n: usize, e: i64) -> usize {
        let mut l = ModLattice::new(n, e);
        for r in rows {
            l.insert(r);
        }
        let total = (e as usize).pow(n as u32);
        let mut reps = std::collections::HashSet::new();
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let x = (c % e as usize) as i64;
                    c /= e as usize;
                    x
                })
                .collect();
            reps.insert(l.reduce(&v));
        }
        reps.len()
    }

    proptest! {
        #[test]
        fn smith_order_matches_reduction(
            e in 2i64..9,
            rows in proptest::collection::vec(proptest::collection::vec(0i64..20, 3), 0..4),
        ) {
            let sf = smith_mod(&rows, 3, e);
            let order: i64 = sf.factors.iter().product();
            prop_assert_eq!(order as usize, brute_quotient_order(&rows, 3, e));
            for w in sf.factors.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }

        #[test]
        fn smith_generators_have_the_stated_orders(
            e in 2i64..9,
            rows in proptest::collection::vec(proptest::collection::vec(0i64..20, 3), 0..4),
        ) {
            let sf = smith_mod(&rows, 3, e);
            let mut l = ModLattice::new(3, e);
            for r in &rows {
                l.insert(r);
            }
            for (f, g) in sf.factors.iter().zip(&sf.generators) {
                let scaled: Vec<i64> = g.iter().map(|x| x * f).collect();
                prop_assert!(l.contains(&scaled));
                for k in 1..*f {
                    let partial: Vec<i64> = g.iter().map(|x| x * k).collect();
                    prop_assert!(!l.contains(&partial));
                }
            }
        }

        #[test]
        fn reduce_is_canonical(
            e in 2i64..9,
            rows in proptest::collection::vec(proptest::collection::vec(-20i64..20, 3), 0..4),
            v in proptest::collection::vec(-30i64..30, 3),
            w in proptest::collection::vec(-3i64..3, 4),
        ) {
            let mut l = ModLattice::new(3, e);
            for r in &rows {
                l.insert(r);
            }
            let mut shifted = v.clone();
            for (k, r) in w.iter().zip(&rows) {
                for j in 0..3 {
                    shifted[j] += k * r[j];
                }
            }
            prop_assert_eq!(l.reduce(&v), l.reduce(&shifted));
        }
    }
}
