#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::group::{increment, subgroup_as_group, CyclicDecomposition, GroupAction, GroupRef};
use crate::lattice::{smith_mod, ModLattice};

/// Bound on `dim C³ + dim C²` (integer coordinates) for one computation.
pub const MAX_H2_DIMENSION: usize = 2048;
/// Classes beyond this many are summarized by generators only.
pub const MAX_LISTED_CLASSES: usize = 1024;

/// `H²(Q, A)` for an abelian `A` with a `Q`-action.
///
/// Cocycle tables are `|Q| × |Q|` arrays of elements of `A`, normalized so
/// that any entry with an identity argument is the identity.
#[derive(Debug, Clone)]
pub struct TwoCohomologyGroup {
    pub action: GroupAction,
    /// Invariant factors greater than one, in divisibility order.
    pub invariant_factors: Vec<usize>,
    /// A cocycle generating each cyclic factor.
    pub generators: Vec<Vec<Vec<usize>>>,
    /// One canonical cocycle per class, in lexicographic order; empty when
    /// there are more than [`MAX_LISTED_CLASSES`] classes.
    pub representatives: Vec<Vec<Vec<usize>>>,
}

impl TwoCohomologyGroup {
    pub fn q(&self) -> &GroupRef {
        self.action.actor()
    }

    pub fn a(&self) -> &GroupRef {
        self.action.target()
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&f| f as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Whether `table` is a normalized 2-cocycle:
/// `θ_a(f(b,c)) · f(a,bc) = f(ab,c) · f(a,b)`.
pub fn is_two_cocycle(action: &GroupAction, table: &[Vec<usize>]) -> bool {
    let (q, a) = (action.actor(), action.target());
    let n = q.order();
    if table.len() != n
        || table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= a.order()))
    {
        return false;
    }
    if (0..n).any(|x| table[0][x] != 0 || table[x][0] != 0) {
        return false;
    }
    q.elements().all(|x| {
        q.elements().all(|y| {
            q.elements().all(|z| {
                let lhs = a.mul(action.apply(x, table[y][z]), table[x][q.mul(y, z)]);
                let rhs = a.mul(table[q.mul(x, y)][z], table[x][y]);
                lhs == rhs
            })
        })
    })
}

/// Integer model of normalized cochains: coordinate `(tuple, j)` holds the
/// `j`-th cyclic coordinate of the value on a tuple of non-identity elements.
struct Cochains<'a> {
    action: &'a GroupAction,
    decomposition: CyclicDecomposition,
    /// `matrices[q][j][i]`: coordinate `j` of `θ_q(generator i)`.
    matrices: Vec<Vec<Vec<i64>>>,
    modulus: i64,
}

impl<'a> Cochains<'a> {
    fn new(action: &'a GroupAction) -> Result<Self> {
        let decomposition = CyclicDecomposition::new(action.target())?;
        let k = decomposition.factors().len();
        let matrices = action
            .actor()
            .elements()
            .map(|q| {
                let mut m = vec![vec![0i64; k]; k];
                for (i, &gen) in decomposition.generators().iter().enumerate() {
                    for (j, &c) in decomposition
                        .coordinates(action.apply(q, gen))
                        .iter()
                        .enumerate()
                    {
                        m[j][i] = c as i64;
                    }
                }
                m
            })
            .collect();
        let modulus = decomposition.exponent() as i64;
        Ok(Cochains {
            action,
            decomposition,
            matrices,
            modulus,
        })
    }

    fn k(&self) -> usize {
        self.decomposition.factors().len()
    }

    fn nq(&self) -> usize {
        self.action.actor().order() - 1
    }

    fn dim(&self, degree: u32) -> usize {
        self.nq().pow(degree) * self.k()
    }

    /// Offset of the value on a tuple of non-identity elements.
    fn slot(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.nq() + (x - 1)) * self.k()
    }

    /// [`Self::slot`], or `None` where a normalized cochain vanishes.
    fn value_slot(&self, tuple: &[usize]) -> Option<usize> {
        (!tuple.contains(&0)).then(|| self.slot(tuple))
    }

    /// `out += θ_q(v[at..at+k])` on coordinates.
    fn add_acted(&self, out: &mut [i64], q: usize, v: &[i64], at: usize) {
        let m = &self.matrices[q];
        for (j, o) in out.iter_mut().enumerate() {
            *o += (0..self.k()).map(|i| m[j][i] * v[at + i]).sum::<i64>();
        }
    }

    fn add_plain(&self, out: &mut [i64], v: &[i64], at: usize, sign: i64) {
        for (j, o) in out.iter_mut().enumerate() {
            *o += sign * v[at + j];
        }
    }

    fn d1(&self, c: &[i64]) -> Vec<i64> {
        let q = self.action.actor();
        let k = self.k();
        let mut out = vec![0; self.dim(2)];
        for x in 1..q.order() {
            for y in 1..q.order() {
                let s = self.slot(&[x, y]);
                let o = &mut out[s..s + k];
                self.add_acted(o, x, c, self.slot(&[y]));
                if let Some(at) = self.value_slot(&[q.mul(x, y)]) {
                    self.add_plain(o, c, at, -1);
                }
                self.add_plain(o, c, self.slot(&[x]), 1);
            }
        }
        out
    }

    fn d2(&self, f: &[i64]) -> Vec<i64> {
        let q = self.action.actor();
        let k = self.k();
        let mut out = vec![0; self.dim(3)];
        for x in 1..q.order() {
            for y in 1..q.order() {
                for z in 1..q.order() {
                    let s = self.slot(&[x, y, z]);
                    let o = &mut out[s..s + k];
                    self.add_acted(o, x, f, self.slot(&[y, z]));
                    if let Some(at) = self.value_slot(&[q.mul(x, y), z]) {
                        self.add_plain(o, f, at, -1);
                    }
                    if let Some(at) = self.value_slot(&[x, q.mul(y, z)]) {
                        self.add_plain(o, f, at, 1);
                    }
                    self.add_plain(o, f, self.slot(&[x, y]), -1);
                }
            }
        }
        out
    }

    /// Multiplies coordinate `j` of every value by `e / m_j`, so that
    /// "zero in `A`" becomes "zero modulo `e`" uniformly.
    fn scale_to_modulus(&self, v: &mut [i64]) {
        let factors = self.decomposition.factors();
        for (idx, x) in v.iter_mut().enumerate() {
            *x *= self.modulus / factors[idx % self.k()] as i64;
        }
    }

    fn table(&self, v: &[i64]) -> Vec<Vec<usize>> {
        let q = self.action.actor();
        let n = q.order();
        let k = self.k();
        let mut table = vec![vec![0; n]; n];
        for x in 1..n {
            for y in 1..n {
                let s = self.slot(&[x, y]);
                let coords: Vec<usize> = v[s..s + k]
                    .iter()
                    .map(|&c| c.rem_euclid(self.modulus) as usize)
                    .collect();
                table[x][y] = self.decomposition.element(&coords);
            }
        }
        table
    }
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Sum of `p`-adic valuations of `values` for each prime `p` dividing `e`.
fn valuations(values: impl Iterator<Item = i64>, e: i64) -> Vec<(i64, u32)> {
    let primes: Vec<i64> = (2..=e)
        .filter(|&p| e % p == 0 && (2..p).all(|d| p % d != 0))
        .collect();
    let mut totals: Vec<(i64, u32)> = primes.iter().map(|&p| (p, 0)).collect();
    for mut x in values {
        for (p, t) in totals.iter_mut() {
            while x % *p == 0 {
                x /= *p;
                *t += 1;
            }
        }
    }
    totals
}

/// Computes `H²(Q, A)` as `Z²/B²` on normalized cochains.
pub fn h2_abelian(action: &GroupAction) -> Result<TwoCohomologyGroup> {
    let cochains = Cochains::new(action)?;
    let (n2, n3) = (cochains.dim(2), cochains.dim(3));
    if n2 + n3 > MAX_H2_DIMENSION {
        return Err(Error::budget(
            format!("H² cochain dimension {}", n2 + n3),
            MAX_H2_DIMENSION as u64,
        ));
    }
    let e = cochains.modulus;
    let k = cochains.k();
    let factors = cochains.decomposition.factors().to_vec();

    // Z²: vectors x with d2(x) = 0 in A, read off from the lattice
    // {(scaled d2(x), x)} + e·Z as the part vanishing on the first block.
    let mut augmented = ModLattice::new(n3 + n2, e);
    for idx in 0..n2 {
        let mut image = cochains.d2(&unit(n2, idx));
        cochains.scale_to_modulus(&mut image);
        image.extend(unit(n2, idx));
        augmented.insert(&image);
    }
    let cocycles = augmented.tail(n3);

    // B²: coboundaries plus the relations m_j·(coordinate j).
    let mut coboundaries = ModLattice::new(n2, e);
    for idx in 0..n2 {
        let mut v = vec![0; n2];
        v[idx] = factors[idx % k.max(1)] as i64;
        coboundaries.insert(&v);
    }
    let n1 = cochains.dim(1);
    for idx in 0..n1 {
        coboundaries.insert(&cochains.d1(&unit(n1, idx)));
    }

    let relations = coboundaries
        .rows()
        .iter()
        .map(|row| {
            cocycles
                .coordinates(row)
                .ok_or_else(|| Error::TheoremViolation("a coboundary is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let smith = smith_mod(&relations, n2, e);

    let mut invariant_factors = Vec::new();
    let mut generator_vectors = Vec::new();
    for (f, coords) in smith.factors.iter().zip(&smith.generators) {
        if *f > 1 {
            let mut v = vec![0i64; n2];
            for (c, row) in coords.iter().zip(cocycles.rows()) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + c * r).rem_euclid(e);
                }
            }
            invariant_factors.push(*f as usize);
            generator_vectors.push(coboundaries.reduce(&v));
        }
    }

    let order: u128 = invariant_factors.iter().map(|&f| f as u128).product();
    let index_b = valuations(coboundaries.diagonal(), e);
    let index_z = valuations(cocycles.diagonal(), e);
    let from_index: u128 = index_b
        .iter()
        .zip(&index_z)
        .map(|(&(p, b), &(_, z))| (p as u128).pow(b - z))
        .product();
    if order != from_index {
        return Err(Error::TheoremViolation(format!(
            "Smith form gives |H²| = {order}, lattice indices give {from_index}"
        )));
    }

    let generators: Vec<Vec<Vec<usize>>> = generator_vectors
        .iter()
        .map(|v| cochains.table(v))
        .collect();
    for table in &generators {
        if !is_two_cocycle(action, table) {
            return Err(Error::TheoremViolation(
                "generator is not a 2-cocycle".into(),
            ));
        }
    }

    let mut representatives = Vec::new();
    if order <= MAX_LISTED_CLASSES as u128 {
        let mut c = vec![0usize; invariant_factors.len()];
        loop {
            let mut v = vec![0i64; n2];
            for (&ci, g) in c.iter().zip(&generator_vectors) {
                for (x, y) in v.iter_mut().zip(g) {
                    *x += ci as i64 * y;
                }
            }
            representatives.push(cochains.table(&coboundaries.reduce(&v)));
            if !increment(&mut c, &invariant_factors) {
                break;
            }
        }
        representatives.sort();
        representatives.dedup();
        if representatives.len() as u128 != order {
            return Err(Error::TheoremViolation(
                "distinct H² classes share a canonical representative".into(),
            ));
        }
        if let Some(bad) = representatives.iter().find(|t| !is_two_cocycle(action, t)) {
            return Err(Error::TheoremViolation(format!(
                "representative {bad:?} is not a 2-cocycle"
            )));
        }
    }

    Ok(TwoCohomologyGroup {
        action: action.clone(),
        invariant_factors,
        generators,
        representatives,
    })
}

/// The group where the obstruction to descending a `G`-cover over `Q` lives.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    /// `Z(G)` as elements of `G`.
    pub center: Vec<usize>,
    /// `None` when `G` is centerless: nothing can obstruct.
    pub group: Option<TwoCohomologyGroup>,
}

/// `H²(Q, Z(G))` with `Q` acting on `Z(G)` by `perms` (indices local to
/// `Z(G)`, in increasing order of the elements of `G`), or trivially if `None`.
pub fn obstruction_report(
    g: &GroupRef,
    q: &GroupRef,
    perms: Option<Vec<Vec<usize>>>,
) -> Result<ObstructionReport> {
    let center = g.center();
    let (z, _) = subgroup_as_group(g, &center)?;
    let action = match perms {
        Some(p) => GroupAction::new(q.clone(), z.clone(), p)?,
        None => GroupAction::trivial(q, &z),
    };
    let group = if center.is_trivial() {
        None
    } else {
        Some(h2_abelian(&action)?)
    };
    Ok(ObstructionReport {
        center: center.elements().to_vec(),
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::group::catalog::build;
    use crate::group::{automorphism_group, FiniteGroup};
    use std::collections::HashSet;
    use std::sync::Arc;

    /// `|Z²| / |B²|` by listing every normalized table.
    fn brute_h2_order(action: &GroupAction) -> usize {
        let (q, a) = (action.actor(), action.target());
        let n = q.order();
        let cells = (n - 1) * (n - 1);
        let total = a.order().pow(cells as u32);
        let mut table = vec![vec![0; n]; n];
        let mut cocycles = 0;
        for code in 0..total {
            let mut c = code;
            for x in 1..n {
                for y in 1..n {
                    table[x][y] = c % a.order();
                    c /= a.order();
                }
            }
            cocycles += usize::from(is_two_cocycle(action, &table));
        }
        let mut coboundaries = HashSet::new();
        let cochains = a.order().pow((n - 1) as u32);
        let mut f = vec![0; n];
        for code in 0..cochains {
            let mut c = code;
            for v in f.iter_mut().skip(1) {
                *v = c % a.order();
                c /= a.order();
            }
            let delta: Vec<Vec<usize>> = q
                .elements()
                .map(|x| {
                    q.elements()
                        .map(|y| {
                            let t = a.mul(action.apply(x, f[y]), f[x]);
                            a.mul(t, a.inv(f[q.mul(x, y)]))
                        })
                        .collect()
                })
                .collect();
            coboundaries.insert(delta);
        }
        assert_eq!(cocycles % coboundaries.len(), 0);
        cocycles / coboundaries.len()
    }

    fn trivial(qn: &str, an: &str) -> GroupAction {
        GroupAction::trivial(&build(qn).unwrap(), &build(an).unwrap())
    }

    #[test]
    fn known_small_groups() {
        let h = h2_abelian(&trivial("C2", "C2")).unwrap();
        assert_eq!(h.invariant_factors, vec![2]);
        assert_eq!(h.representatives.len(), 2);
        assert!(h2_abelian(&trivial("C3", "C2")).unwrap().is_trivial());
        assert!(h2_abelian(&trivial("C1", "V4")).unwrap().is_trivial());
        assert_eq!(h2_abelian(&trivial("V4", "C2")).unwrap().order(), 8);
        assert_eq!(h2_abelian(&trivial("C4", "C6")).unwrap().order(), 2);
        assert!(h2_abelian(&trivial("S3", "C3")).unwrap().order() == 1);
        assert_eq!(h2_abelian(&trivial("S3", "C2")).unwrap().order(), 2);
    }

    #[test]
    fn trivial_coefficients() {
        let one = Arc::new(FiniteGroup::trivial());
        let h = h2_abelian(&GroupAction::trivial(&build("S3").unwrap(), &one)).unwrap();
        assert!(h.is_trivial());
        assert_eq!(h.representatives, vec![vec![vec![0; 6]; 6]]);
    }

    #[test]
    fn matches_brute_force() {
        for qn in ["C1", "C2", "C3"] {
            for an in ["C1", "C2", "C3", "C4", "V4"] {
                let (q, a) = (build(qn).unwrap(), build(an).unwrap());
                let aut = automorphism_group(&a, &Budget::default()).unwrap();
                for action in aut.all_actions(&q, &Budget::default()).unwrap() {
                    let h = h2_abelian(&action).unwrap();
                    assert_eq!(h.order() as usize, brute_h2_order(&action), "{qn} on {an}");
                }
            }
        }
    }

    #[test]
    fn nontrivial_action_on_c3() {
        // C2 acting on C3 by inversion: H² vanishes (coprime orders).
        let (c2, c3) = (build("C2").unwrap(), build("C3").unwrap());
        let inv: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let action = GroupAction::new(c2, c3.clone(), vec![c3.elements().collect(), inv]).unwrap();
        assert!(h2_abelian(&action).unwrap().is_trivial());
    }

    #[test]
    fn rejects_nonabelian() {
        assert!(h2_abelian(&trivial("C2", "S3")).is_err());
    }

    #[test]
    fn oversized_requests_hit_the_budget() {
        let err = h2_abelian(&trivial("S4", "V4")).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn obstruction_examples() {
        let s3 = build("S3").unwrap();
        for q in ["C2", "V4", "S3"] {
            let r = obstruction_report(&s3, &build(q).unwrap(), None).unwrap();
            assert!(r.group.is_none());
        }
        let c2 = build("C2").unwrap();
        let r = obstruction_report(&c2, &c2, None).unwrap();
        assert_eq!(r.group.unwrap().order(), 2);
        let r = obstruction_report(&build("Q8").unwrap(), &c2, None).unwrap();
        assert_eq!(r.center.len(), 2);
        assert_eq!(r.group.unwrap().order(), 2);
    }
}
