use std::collections::BTreeMap;

use crate::budget::{Budget, SearchCounter};
use crate::error::{Error, Result};
use crate::group::{generating_sequence, GroupAction};

/// `z: Q → G` with `z(ab) = z(a)·θ_a(z(b))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OneCocycle {
    pub values: Vec<usize>,
}

/// One cohomology class: cocycles related by `z ↦ (q ↦ g⁻¹·z(q)·θ_q(g))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Class {
    /// Lexicographically smallest member.
    pub canonical: Vec<usize>,
    /// Positions in [`H1::cocycles`].
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct H1 {
    pub cocycles: Vec<OneCocycle>,
    pub classes: Vec<H1Class>,
}

pub fn is_one_cocycle(theta: &GroupAction, values: &[usize]) -> bool {
    let (q, g) = (theta.actor(), theta.target());
    values.len() == q.order()
        && values.iter().all(|&x| x < g.order())
        && q.elements().all(|a| {
            q.elements()
                .all(|b| values[q.mul(a, b)] == g.mul(values[a], theta.apply(a, values[b])))
        })
}

/// Every 1-cocycle, by backtracking over values on a generating sequence of `Q`.
pub fn one_cocycles(theta: &GroupAction, budget: &Budget) -> Result<Vec<OneCocycle>> {
    let q = theta.actor();
    let gens = generating_sequence(q);
    let mut z = vec![usize::MAX; q.order()];
    z[0] = 0;
    let mut out = Vec::new();
    let mut counter = SearchCounter::new(budget);
    extend(theta, &gens, 0, &mut z, &mut counter, &mut out)?;
    Ok(out)
}

fn extend(
    theta: &GroupAction,
    gens: &[usize],
    k: usize,
    z: &mut Vec<usize>,
    counter: &mut SearchCounter,
    out: &mut Vec<OneCocycle>,
) -> Result<()> {
    if k == gens.len() {
        out.push(OneCocycle { values: z.clone() });
        return Ok(());
    }
    let g = theta.target();
    for value in g.elements() {
        counter.tick()?;
        let saved = z.clone();
        z[gens[k]] = value;
        if close(theta, &gens[..=k], z) {
            extend(theta, gens, k + 1, z, counter, out)?;
        }
        *z = saved;
    }
    Ok(())
}

/// Propagates `z(a·s) = z(a)·θ_a(z(s))` over the assigned generators; false on conflict.
fn close(theta: &GroupAction, gens: &[usize], z: &mut [usize]) -> bool {
    let (q, g) = (theta.actor(), theta.target());
    let mut queue: Vec<usize> = q.elements().filter(|&a| z[a] != usize::MAX).collect();
    while let Some(a) = queue.pop() {
        for &s in gens {
            let b = q.mul(a, s);
            let value = g.mul(z[a], theta.apply(a, z[s]));
            if z[b] == usize::MAX {
                z[b] = value;
                queue.push(b);
            } else if z[b] != value {
                return false;
            }
        }
    }
    true
}

/// `Z¹(Q, G)` partitioned into cohomology classes, ordered by canonical member.
pub fn h1_classes(theta: &GroupAction, budget: &Budget) -> Result<H1> {
    let cocycles = one_cocycles(theta, budget)?;
    let (q, g) = (theta.actor(), theta.target());
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, z) in cocycles.iter().enumerate() {
        let canonical = g
            .elements()
            .map(|x| {
                let xi = g.inv(x);
                q.elements()
                    .map(|a| g.mul(g.mul(xi, z.values[a]), theta.apply(a, x)))
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("groups are nonempty");
        classes.entry(canonical).or_default().push(i);
    }
    let classes: Vec<H1Class> = classes
        .into_iter()
        .map(|(canonical, members)| H1Class { canonical, members })
        .collect();
    for class in &classes {
        if !cocycles.iter().any(|z| z.values == class.canonical) {
            return Err(Error::TheoremViolation(
                "canonical 1-cocycle is not among the enumerated cocycles".into(),
            ));
        }
    }
    Ok(H1 { cocycles, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::build;
    use crate::group::{automorphism_group, FiniteGroup, GroupRef};
    use std::sync::Arc;

    fn brute_cocycles(theta: &GroupAction) -> usize {
        let (q, g) = (theta.actor(), theta.target());
        let total = g.order().pow(q.order() as u32);
        let mut values = vec![0; q.order()];
        (0..total)
            .filter(|&code| {
                let mut c = code;
                for v in values.iter_mut() {
                    *v = c % g.order();
                    c /= g.order();
                }
                is_one_cocycle(theta, &values)
            })
            .count()
    }

    #[test]
    fn trivial_action_on_s3() {
        let (c2, s3) = (build("C2").unwrap(), build("S3").unwrap());
        let h1 = h1_classes(&GroupAction::trivial(&c2, &s3), &Budget::default()).unwrap();
        assert_eq!(h1.cocycles.len(), 4);
        assert_eq!(h1.classes.len(), 2);
    }

    #[test]
    fn trivial_coefficients() {
        let one: GroupRef = Arc::new(FiniteGroup::trivial());
        for q in ["C2", "S3", "V4"] {
            let q = build(q).unwrap();
            let h1 = h1_classes(&GroupAction::trivial(&q, &one), &Budget::default()).unwrap();
            assert_eq!(h1.classes.len(), 1);
        }
    }

    #[test]
    fn inversion_on_c3() {
        let (c2, c3) = (build("C2").unwrap(), build("C3").unwrap());
        let inv: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let theta = GroupAction::new(c2, c3.clone(), vec![c3.elements().collect(), inv]).unwrap();
        let h1 = h1_classes(&theta, &Budget::default()).unwrap();
        assert_eq!(h1.cocycles.len(), 3);
        assert_eq!(h1.classes.len(), 1);
    }

    #[test]
    fn matches_brute_force_for_all_small_actions() {
        for (qn, gn) in [
            ("C2", "C3"),
            ("C2", "V4"),
            ("C3", "V4"),
            ("C2", "S3"),
            ("V4", "C4"),
            ("C4", "C2"),
        ] {
            let (q, g) = (build(qn).unwrap(), build(gn).unwrap());
            let aut = automorphism_group(&g, &Budget::default()).unwrap();
            for theta in aut.all_actions(&q, &Budget::default()).unwrap() {
                let z1 = one_cocycles(&theta, &Budget::default()).unwrap();
                assert_eq!(z1.len(), brute_cocycles(&theta), "{qn} on {gn}");
                assert!(z1.iter().all(|z| is_one_cocycle(&theta, &z.values)));
                let h1 = h1_classes(&theta, &Budget::default()).unwrap();
                let total: usize = h1.classes.iter().map(|c| c.members.len()).sum();
                assert_eq!(total, z1.len());
            }
        }
    }
}
