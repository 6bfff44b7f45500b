use std::collections::HashMap;

use super::GroupRef;
use crate::error::{Error, Result};
use crate::lattice::smith_mod;

/// An abelian group written as `Z/n₁ ⊕ … ⊕ Z/n_k` with `n₁ | n₂ | … | n_k`
/// and every `nᵢ > 1`.
#[derive(Debug, Clone)]
pub struct CyclicDecomposition {
    group: GroupRef,
    factors: Vec<usize>,
    generators: Vec<usize>,
    coords: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl CyclicDecomposition {
    /// Decomposes `group` from a presentation on its greedy generators.
    pub fn new(group: &GroupRef) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::Precondition(format!(
                "{} is not abelian",
                group.label()
            )));
        }
        let gens = group.generators().to_vec();
        let r = gens.len();
        let exponent = group
            .elements()
            .map(|x| group.element_order(x))
            .fold(1, lcm);

        // A word for every element, reached by breadth-first search over the generators.
        let mut word: Vec<Option<Vec<i64>>> = vec![None; group.order()];
        word[0] = Some(vec![0; r]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut relations = Vec::new();
        while let Some(a) = queue.pop_front() {
            let wa = word[a].clone().expect("queued elements have words");
            for (i, &x) in gens.iter().enumerate() {
                let b = group.mul(a, x);
                let mut w = wa.clone();
                w[i] += 1;
                match &word[b] {
                    Some(wb) => {
                        let rel: Vec<i64> = w.iter().zip(wb).map(|(p, q)| p - q).collect();
                        if rel.iter().any(|&c| c.rem_euclid(exponent as i64) != 0) {
                            relations.push(rel);
                        }
                    }
                    None => {
                        word[b] = Some(w);
                        queue.push_back(b);
                    }
                }
            }
        }

        let smith = smith_mod(&relations, r, exponent as i64);
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        for (f, row) in smith.factors.iter().zip(&smith.generators) {
            if *f > 1 {
                let elt = row
                    .iter()
                    .zip(&gens)
                    .fold(0, |acc, (&c, &x)| group.mul(acc, group.pow(x, c as usize)));
                factors.push(*f as usize);
                generators.push(elt);
            }
        }

        let mut coords = vec![Vec::new(); group.order()];
        let mut seen = vec![false; group.order()];
        let mut index = HashMap::with_capacity(group.order());
        let mut c = vec![0usize; factors.len()];
        loop {
            let elt = c
                .iter()
                .zip(&generators)
                .fold(0, |acc, (&k, &x)| group.mul(acc, group.pow(x, k)));
            if std::mem::replace(&mut seen[elt], true) {
                return Err(Error::TheoremViolation(format!(
                    "cyclic decomposition of {} is not injective",
                    group.label()
                )));
            }
            coords[elt] = c.clone();
            index.insert(c.clone(), elt);
            if !increment(&mut c, &factors) {
                break;
            }
        }
        if index.len() != group.order() {
            return Err(Error::TheoremViolation(format!(
                "cyclic decomposition of {} covers {} of {} elements",
                group.label(),
                index.len(),
                group.order()
            )));
        }
        Ok(CyclicDecomposition {
            group: group.clone(),
            factors,
            generators,
            coords,
            index,
        })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    /// Invariant factors in divisibility order.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Element generating each cyclic factor.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn exponent(&self) -> usize {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn coordinates(&self, x: usize) -> &[usize] {
        &self.coords[x]
    }

    /// The element with the given coordinates, each reduced modulo its factor.
    pub fn element(&self, coords: &[usize]) -> usize {
        let reduced: Vec<usize> = coords
            .iter()
            .zip(&self.factors)
            .map(|(c, f)| c % f)
            .collect();
        self.index[&reduced]
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Mixed-radix odometer; returns false after wrapping back to zero.
pub(crate) fn increment(c: &mut [usize], radices: &[usize]) -> bool {
    for (d, r) in c.iter_mut().zip(radices) {
        *d += 1;
        if *d < *r {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::build;

    fn factors(name: &str) -> Vec<usize> {
        CyclicDecomposition::new(&build(name).unwrap())
            .unwrap()
            .factors()
            .to_vec()
    }

    #[test]
    fn invariant_factors_of_catalog_groups() {
        assert_eq!(factors("C1"), Vec::<usize>::new());
        assert_eq!(factors("C2"), vec![2]);
        assert_eq!(factors("C6"), vec![6]);
        assert_eq!(factors("V4"), vec![2, 2]);
        assert_eq!(factors("C2xC3"), vec![6]);
        assert_eq!(factors("C2xC4"), vec![2, 4]);
        assert_eq!(factors("C4xC6"), vec![2, 12]);
        assert_eq!(factors("C2xC2xC2"), vec![2, 2, 2]);
    }

    #[test]
    fn coordinates_are_a_homomorphism() {
        for name in ["C4xC6", "V4", "C2xC2xC2", "C12", "C3xC3"] {
            let g = build(name).unwrap();
            let d = CyclicDecomposition::new(&g).unwrap();
            for a in g.elements() {
                assert_eq!(d.element(d.coordinates(a)), a);
                for b in g.elements() {
                    let sum: Vec<usize> = d
                        .coordinates(a)
                        .iter()
                        .zip(d.coordinates(b))
                        .map(|(x, y)| x + y)
                        .collect();
                    assert_eq!(d.element(&sum), g.mul(a, b), "{name}");
                }
            }
        }
    }

    #[test]
    fn rejects_nonabelian() {
        assert!(CyclicDecomposition::new(&build("S3").unwrap()).is_err());
    }
}
