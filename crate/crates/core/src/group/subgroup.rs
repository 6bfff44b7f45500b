use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupRef, Homomorphism};
use crate::error::{Error, Result};

/// A subgroup of some parent group, stored both as a sorted element list
/// and as a membership bitset over the parent's indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    members: FixedBitSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then lexicographically by element list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    fn from_members(members: FixedBitSet) -> Self {
        Subgroup {
            elements: members.ones().collect(),
            members,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Order of the group this subgroup lives in.
    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup::from_members(members)
    }

    fn check_parent(&self, group: &FiniteGroup) -> Result<()> {
        if self.parent_order() != group.order() {
            return Err(Error::NotASubgroup(format!(
                "subgroup of a group of order {} used with {} of order {}",
                self.parent_order(),
                group.label(),
                group.order()
            )));
        }
        Ok(())
    }
}

impl FiniteGroup {
    /// Validates that `elements` form a subgroup (identity, closure).
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in elements {
            self.check_element(x)?;
            members.insert(x);
        }
        if !members.contains(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for a in members.ones() {
            for b in members.ones() {
                if !members.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: {} · {} = {}",
                        self.element_name(a),
                        self.element_name(b),
                        self.element_name(self.mul(a, b))
                    )));
                }
            }
        }
        Ok(Subgroup::from_members(members))
    }

    /// Subgroup generated by `gens`; the caller guarantees indices are in range.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !members.put(b) {
                    queue.push(b);
                }
            }
            i += 1;
        }
        Subgroup::from_members(members)
    }

    pub fn try_generate(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            self.check_element(g)?;
        }
        Ok(self.generate(gens))
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        Subgroup::from_members(members)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.generate(&[])
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a.elements.iter().chain(&b.elements).copied().collect();
        self.generate(&gens)
    }

    /// `{x : x·t = t·x for every t in target}`.
    pub fn centralizer(&self, target: &[usize]) -> Result<Subgroup> {
        for &t in target {
            self.check_element(t)?;
        }
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in self.elements() {
            if target.iter().all(|&t| self.commutes(x, t)) {
                members.insert(x);
            }
        }
        Ok(Subgroup::from_members(members))
    }

    pub fn center(&self) -> Subgroup {
        let all: Vec<usize> = self.elements().collect();
        self.centralizer(&all).expect("elements are in range")
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.parent_order() == self.order()
            && self
                .elements()
                .all(|g| h.elements.iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    /// `σ⁻¹ H σ`
    pub fn conjugate_subgroup(&self, sigma: usize, h: &Subgroup) -> Subgroup {
        let s_inv = self.inv(sigma);
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in &h.elements {
            members.insert(self.mul(self.mul(s_inv, x), sigma));
        }
        Subgroup::from_members(members)
    }

    /// Intersection of all conjugates `σ⁻¹ H σ`, the largest subgroup of `H`
    /// that is normal in this group.
    pub fn normal_core(&self, h: &Subgroup) -> Result<Subgroup> {
        h.check_parent(self)?;
        let mut core = h.members.clone();
        for sigma in self.elements() {
            core.intersect_with(&self.conjugate_subgroup(sigma, h).members);
        }
        Ok(Subgroup::from_members(core))
    }

    /// All subgroups, sorted by order and then by element list.
    ///
    /// Every subgroup is a join of cyclic subgroups, so the list is closed off
    /// by repeatedly joining known subgroups with cyclic ones.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        for x in self.elements() {
            let c = self.generate(&[x]);
            if seen.insert(c.members.clone()) {
                cyclic.push((x, c));
            }
        }
        let mut found: Vec<(Vec<usize>, Subgroup)> =
            cyclic.iter().map(|(x, c)| (vec![*x], c.clone())).collect();
        let mut i = 0;
        while i < found.len() {
            for (x, c) in &cyclic {
                if c.is_subset_of(&found[i].1) {
                    continue;
                }
                let mut gens = found[i].0.clone();
                gens.push(*x);
                let joined = self.generate(&gens);
                if seen.insert(joined.members.clone()) {
                    found.push((gens, joined));
                }
            }
            i += 1;
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|(_, s)| s).collect();
        out.sort();
        out
    }
}

/// The subgroup `h` of `ambient` as a group in its own right, plus the
/// inclusion. Elements keep their relative order, so the identity stays at 0.
pub fn subgroup_as_group(ambient: &GroupRef, h: &Subgroup) -> Result<(GroupRef, Homomorphism)> {
    h.check_parent(ambient)?;
    let elems = h.elements();
    let mut local = vec![usize::MAX; ambient.order()];
    for (i, &x) in elems.iter().enumerate() {
        local[x] = i;
    }
    let k = elems.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in elems {
        for &b in elems {
            table.push(local[ambient.mul(a, b)]);
        }
    }
    let names = elems
        .iter()
        .map(|&x| ambient.element_name(x).to_string())
        .collect();
    let label = format!("{}<{}>", ambient.label(), k);
    let group = Arc::new(FiniteGroup::from_trusted(label, k, table, names));
    let inclusion = Homomorphism::new_unchecked(group.clone(), ambient.clone(), elems.to_vec());
    Ok((group, inclusion))
}

/// The quotient `ambient / n` on cosets ordered by their smallest element,
/// together with the projection.
pub fn quotient_group(ambient: &GroupRef, n: &Subgroup) -> Result<(GroupRef, Homomorphism)> {
    n.check_parent(ambient)?;
    if !ambient.is_normal(n) {
        return Err(Error::NotNormal(format!(
            "subgroup of order {} in {}",
            n.order(),
            ambient.label()
        )));
    }
    let mut coset_of = vec![usize::MAX; ambient.order()];
    let mut reps = Vec::new();
    for x in ambient.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in n.elements() {
            coset_of[ambient.mul(x, m)] = id;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[ambient.mul(a, b)]);
        }
    }
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", ambient.element_name(r)))
        .collect();
    let label = format!("{}/{}", ambient.label(), n.order());
    let group = Arc::new(FiniteGroup::from_trusted(label, k, table, names));
    let projection = Homomorphism::new_unchecked(ambient.clone(), group.clone(), coset_of);
    Ok((group, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::build;

    fn brute_center(g: &FiniteGroup) -> Vec<usize> {
        g.elements()
            .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
            .collect()
    }

    #[test]
    fn s3_has_trivial_center() {
        let s3 = build("S3").unwrap();
        assert_eq!(brute_center(&s3), vec![0]);
        assert!(s3.center().is_trivial());
    }

    #[test]
    fn centralizer_of_a3_in_s3_is_a3() {
        let s3 = build("S3").unwrap();
        let a3: Vec<usize> = s3
            .elements()
            .filter(|&x| s3.element_order(x) != 2)
            .collect();
        let expected: Vec<usize> = s3
            .elements()
            .filter(|&x| a3.iter().all(|&t| s3.commutes(x, t)))
            .collect();
        assert_eq!(expected, a3);
        assert_eq!(s3.centralizer(&a3).unwrap().elements(), a3.as_slice());
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let d4 = build("D4").unwrap();
        assert_eq!(d4.centralizer(&[0]).unwrap(), d4.whole());
    }

    #[test]
    fn centralizer_rejects_out_of_range() {
        let c3 = build("C3").unwrap();
        assert!(matches!(
            c3.centralizer(&[5]),
            Err(Error::ElementOutOfRange { index: 5, order: 3 })
        ));
    }

    #[test]
    fn core_of_transposition_subgroup_is_trivial() {
        let s3 = build("S3").unwrap();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.generate(&[t]);
        // Intersect the three conjugates by hand.
        let mut common: Vec<usize> = h.elements().to_vec();
        for sigma in s3.elements() {
            let conj: Vec<usize> = h
                .elements()
                .iter()
                .map(|&x| s3.mul(s3.mul(s3.inv(sigma), x), sigma))
                .collect();
            common.retain(|x| conj.contains(x));
        }
        assert_eq!(common, vec![0]);
        assert!(s3.normal_core(&h).unwrap().is_trivial());
    }

    #[test]
    fn core_of_normal_subgroup_is_itself() {
        let s3 = build("S3").unwrap();
        let a3 = s3.generate(&[3]);
        assert_eq!(a3.order(), 3);
        assert_eq!(s3.normal_core(&a3).unwrap(), a3);
        assert_eq!(s3.normal_core(&s3.whole()).unwrap(), s3.whole());
    }

    #[test]
    fn subgroup_validation() {
        let s3 = build("S3").unwrap();
        assert!(s3.subgroup(&[0, 1]).is_ok());
        assert!(matches!(s3.subgroup(&[1]), Err(Error::NotASubgroup(_))));
        assert!(matches!(
            s3.subgroup(&[0, 1, 2]),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = build("S3").unwrap();
        let a3 = s3.generate(&[3]);
        let (q, proj) = quotient_group(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel(), a3);
        assert!(proj.is_surjective());
    }

    #[test]
    fn quotient_extremes() {
        let d4 = build("D4").unwrap();
        let (q, _) = quotient_group(&d4, &d4.trivial_subgroup()).unwrap();
        assert!(q.is_isomorphic(&d4));
        let (t, _) = quotient_group(&d4, &d4.whole()).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = build("S3").unwrap();
        let h = s3.generate(&[1]);
        assert!(matches!(quotient_group(&s3, &h), Err(Error::NotNormal(_))));
    }

    #[test]
    fn subgroup_counts() {
        // Known subgroup counts.
        for (name, count) in [
            ("S3", 6),
            ("D4", 10),
            ("Q8", 6),
            ("A4", 10),
            ("S4", 30),
            ("V4", 5),
        ] {
            assert_eq!(build(name).unwrap().all_subgroups().len(), count, "{name}");
        }
    }
}
