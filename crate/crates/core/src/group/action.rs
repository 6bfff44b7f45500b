use std::sync::Arc;

use super::hom::same_group;
use super::{subgroup_as_group, FiniteGroup, GroupRef, Homomorphism, Subgroup};
use crate::error::{Error, Result};

/// An action of `actor` on `target` by automorphisms, stored as one
/// permutation of the target's element indices per actor element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: GroupRef,
    target: GroupRef,
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(actor: GroupRef, target: GroupRef, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != actor.order() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for an actor of order {}",
                perms.len(),
                actor.order()
            )));
        }
        for (q, p) in perms.iter().enumerate() {
            check_automorphism(&target, p)
                .map_err(|msg| Error::InvalidAction(format!("element {q}: {msg}")))?;
        }
        for a in actor.elements() {
            for b in actor.elements() {
                let ab = &perms[actor.mul(a, b)];
                if target.elements().any(|x| ab[x] != perms[a][perms[b][x]]) {
                    return Err(Error::InvalidAction(format!(
                        "not multiplicative at ({}, {})",
                        actor.element_name(a),
                        actor.element_name(b)
                    )));
                }
            }
        }
        Ok(GroupAction {
            actor,
            target,
            perms,
        })
    }

    pub(crate) fn new_unchecked(actor: GroupRef, target: GroupRef, perms: Vec<Vec<usize>>) -> Self {
        GroupAction {
            actor,
            target,
            perms,
        }
    }

    pub fn trivial(actor: &GroupRef, target: &GroupRef) -> Self {
        let id: Vec<usize> = target.elements().collect();
        Self::new_unchecked(actor.clone(), target.clone(), vec![id; actor.order()])
    }

    pub fn actor(&self) -> &GroupRef {
        &self.actor
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `θ_q(g)`
    #[inline]
    pub fn apply(&self, q: usize, g: usize) -> usize {
        self.perms[q][g]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn acts_on(&self, actor: &GroupRef, target: &GroupRef) -> bool {
        same_group(&self.actor, actor) && same_group(&self.target, target)
    }

    /// Restricts the action to a subgroup of the target that every `θ_q` preserves.
    pub fn restrict_target(&self, h: &Subgroup) -> Result<GroupAction> {
        let (sub, inclusion) = subgroup_as_group(&self.target, h)?;
        let mut local = vec![usize::MAX; self.target.order()];
        for (i, &x) in inclusion.images().iter().enumerate() {
            local[x] = i;
        }
        let mut perms = Vec::with_capacity(self.perms.len());
        for p in &self.perms {
            let mut restricted = Vec::with_capacity(sub.order());
            for &x in inclusion.images() {
                let y = local[p[x]];
                if y == usize::MAX {
                    return Err(Error::InvalidAction(
                        "subgroup is not preserved by the action".into(),
                    ));
                }
                restricted.push(y);
            }
            perms.push(restricted);
        }
        Ok(Self::new_unchecked(self.actor.clone(), sub, perms))
    }
}

fn check_automorphism(target: &FiniteGroup, p: &[usize]) -> std::result::Result<(), String> {
    if p.len() != target.order() {
        return Err(format!("permutation of length {}", p.len()));
    }
    let mut seen = vec![false; target.order()];
    for &x in p {
        if x >= target.order() || std::mem::replace(&mut seen[x], true) {
            return Err("not a permutation".into());
        }
    }
    for a in target.elements() {
        for b in target.elements() {
            if p[target.mul(a, b)] != target.mul(p[a], p[b]) {
                return Err("not an automorphism".into());
            }
        }
    }
    Ok(())
}

/// `G ⋊_θ Q` with its structure maps.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    /// `g ↦ (g, e)`
    pub iota: Homomorphism,
    /// `(g, q) ↦ q`
    pub pi: Homomorphism,
    /// `q ↦ (e, q)`
    pub canonical_section: Homomorphism,
}

/// Builds `G ⋊_θ Q` with `(g,q)(g',q') = (g·θ_q(g'), q·q')`.
///
/// The pair `(g, q)` sits at index `g·|Q| + q`, so a trivial action yields
/// exactly the table of [`FiniteGroup::direct_product`].
pub fn semidirect_product(
    g: &GroupRef,
    q: &GroupRef,
    theta: &GroupAction,
) -> Result<SemidirectProduct> {
    if !theta.acts_on(q, g) {
        return Err(Error::InvalidAction(format!(
            "action is not of {} on {}",
            q.label(),
            g.label()
        )));
    }
    let (n, m) = (g.order(), q.order());
    let mut table = Vec::with_capacity(n * m * n * m);
    for a in 0..n {
        for x in 0..m {
            for b in 0..n {
                for y in 0..m {
                    table.push(g.mul(a, theta.apply(x, b)) * m + q.mul(x, y));
                }
            }
        }
    }
    let names = (0..n * m)
        .map(|i| format!("({},{})", g.element_name(i / m), q.element_name(i % m)))
        .collect();
    let label = if theta.is_trivial() {
        format!("{}x{}", g.label(), q.label())
    } else {
        format!("{}:{}", g.label(), q.label())
    };
    let total: GroupRef = Arc::new(FiniteGroup::from_trusted(label, n * m, table, names));
    let iota =
        Homomorphism::new_unchecked(g.clone(), total.clone(), (0..n).map(|a| a * m).collect());
    let pi = Homomorphism::new_unchecked(
        total.clone(),
        q.clone(),
        (0..n * m).map(|i| i % m).collect(),
    );
    let canonical_section = Homomorphism::new_unchecked(q.clone(), total.clone(), (0..m).collect());
    Ok(SemidirectProduct {
        group: total,
        iota,
        pi,
        canonical_section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::build;

    fn inversion_action(q: &GroupRef, g: &GroupRef) -> GroupAction {
        let id: Vec<usize> = g.elements().collect();
        let inv: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        GroupAction::new(q.clone(), g.clone(), vec![id, inv]).unwrap()
    }

    #[test]
    fn c3_by_c2_inversion_is_s3() {
        let (c3, c2) = (build("C3").unwrap(), build("C2").unwrap());
        let sd = semidirect_product(&c3, &c2, &inversion_action(&c2, &c3)).unwrap();
        assert_eq!(sd.group.order(), 6);
        assert!(sd.group.is_isomorphic(&build("S3").unwrap()));
        // Re-validate the generated table from scratch.
        FiniteGroup::from_table("check", &sd.group.table_rows()).unwrap();
    }

    #[test]
    fn trivial_action_is_direct_product() {
        for (gn, qn) in [("S3", "C2"), ("C4", "V4"), ("Q8", "C3")] {
            let (g, q) = (build(gn).unwrap(), build(qn).unwrap());
            let sd = semidirect_product(&g, &q, &GroupAction::trivial(&q, &g)).unwrap();
            assert_eq!(*sd.group, g.direct_product(&q));
            assert_eq!(sd.group.order(), g.order() * q.order());
            let central = sd.group.centralizer(sd.iota.images()).unwrap();
            assert_eq!(
                sd.iota
                    .images()
                    .iter()
                    .all(|&x| central.contains(x) && sd.group.center().contains(x)),
                g.is_abelian()
            );
        }
    }

    #[test]
    fn rejects_non_automorphism() {
        let (c3, c2) = (build("C3").unwrap(), build("C2").unwrap());
        let bad = GroupAction::new(c2.clone(), c3.clone(), vec![vec![0, 1, 2], vec![0, 0, 0]]);
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
        // Inversion assigned to the identity of C2 breaks multiplicativity.
        let bad = GroupAction::new(c2, c3, vec![vec![0, 2, 1], vec![0, 2, 1]]);
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
    }
}
