//! Named groups: `C<n>`, `S<n>`, `A<n>`, `D<n>` (dihedral of order 2n),
//! `Q8`, `V4`, and direct products written `<name>x<name>`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteGroup, GroupRef};
use crate::error::{Error, Result};

/// Largest order the catalog will materialize.
pub const MAX_CATALOG_ORDER: usize = 1024;

const MAX_SYMMETRIC_DEGREE: usize = 5;

/// Resolves a catalog name such as `S3`, `Q8` or `C3xC2`.
pub fn build(name: &str) -> Result<GroupRef> {
    let factors: Vec<&str> = name.split('x').collect();
    let mut total = 1usize;
    let mut groups = Vec::with_capacity(factors.len());
    for f in &factors {
        let g = base(f.trim()).map_err(|e| match e {
            Error::UnknownCatalog(_) => Error::UnknownCatalog(name.to_string()),
            other => other,
        })?;
        total = total.saturating_mul(g.order());
        if total > MAX_CATALOG_ORDER {
            return Err(Error::UnknownCatalog(format!(
                "{name} (order exceeds {MAX_CATALOG_ORDER})"
            )));
        }
        groups.push(g);
    }
    let mut iter = groups.into_iter();
    let first = iter.next().expect("split yields at least one factor");
    let product = iter.fold(first, |acc, g| acc.direct_product(&g));
    Ok(Arc::new(product.with_label(name)))
}

fn base(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    match name {
        "Q8" => return Ok(quaternion8()),
        "V4" => return Ok(klein4()),
        _ => {}
    }
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    match family {
        'C' if (1..=MAX_CATALOG_ORDER).contains(&n) => Ok(cyclic(n)),
        'D' if n >= 1 && 2 * n <= MAX_CATALOG_ORDER => Ok(dihedral(n)),
        'S' if (1..=MAX_SYMMETRIC_DEGREE).contains(&n) => Ok(symmetric(n)),
        'A' if (1..=MAX_SYMMETRIC_DEGREE).contains(&n) => Ok(alternating(n)),
        _ => Err(unknown()),
    }
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    FiniteGroup::from_trusted(format!("C{n}"), n, table, names)
}

/// Dihedral group of order `2n`; element `r^k s^f` sits at index `k + n·f`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let idx = |k: usize, f: usize| k + n * f;
    let mut table = Vec::with_capacity(4 * n * n);
    for x in 0..2 * n {
        let (a, e) = (x % n, x / n);
        for y in 0..2 * n {
            let (b, f) = (y % n, y / n);
            // r^a s^e r^b s^f = r^(a ± b) s^(e+f)
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            table.push(idx(k, (e + f) % 2));
        }
    }
    let names = (0..2 * n)
        .map(|x| {
            let (k, f) = (x % n, x / n);
            let r = match k {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), f) {
                (true, 0) => "e".into(),
                (false, 0) => r,
                (true, _) => "s".into(),
                (false, _) => format!("{r}s"),
            }
        })
        .collect();
    FiniteGroup::from_trusted(format!("D{n}"), 2 * n, table, names)
}

pub fn klein4() -> FiniteGroup {
    let table = (0..4).flat_map(|a| (0..4).map(move |b| a ^ b)).collect();
    let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
    FiniteGroup::from_trusted("V4".into(), 4, table, names)
}

/// Quaternion group; index `2u + s` is the unit `u ∈ {1, i, j, k}` with sign `(-1)^s`.
pub fn quaternion8() -> FiniteGroup {
    // Unit products: (unit, negate) for u·v with u, v in {1, i, j, k}.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (u, sign) = UNIT[x / 2][y / 2];
            let negative = (x % 2 == 1) ^ (y % 2 == 1) ^ sign;
            table.push(2 * u + usize::from(negative));
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    FiniteGroup::from_trusted("Q8".into(), 8, table, names)
}

pub fn symmetric(n: usize) -> FiniteGroup {
    permutation_group(format!("S{n}"), all_permutations(n))
}

pub fn alternating(n: usize) -> FiniteGroup {
    let even = all_permutations(n)
        .into_iter()
        .filter(|p| is_even(p))
        .collect();
    permutation_group(format!("A{n}"), even)
}

/// Permutations of `0..n` in lexicographic order (identity first).
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Group of the given permutations under `(στ)(x) = σ(τ(x))`.
/// The list must be closed under composition and start with the identity.
fn permutation_group(label: String, perms: Vec<Vec<usize>>) -> FiniteGroup {
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    for s in &perms {
        for t in &perms {
            let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
            table.push(index[st.as_slice()]);
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_trusted(label, order, table, names)
}

/// One-based cycle notation, `e` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// Entries shown by the `catalog` listing.
pub fn listing_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=12).map(|n| format!("C{n}")).collect();
    names.push("V4".into());
    names.extend((3..=6).map(|n| format!("D{n}")));
    names.push("Q8".into());
    names.extend((3..=5).map(|n| format!("S{n}")));
    names.extend((4..=5).map(|n| format!("A{n}")));
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn revalidate(g: &FiniteGroup) {
        FiniteGroup::from_table(g.label(), &g.table_rows())
            .unwrap_or_else(|e| panic!("{} failed validation: {e}", g.label()));
    }

    #[test]
    fn catalog_tables_are_groups() {
        for name in listing_names()
            .iter()
            .map(String::as_str)
            .chain(["S3xC2", "C2xC2xC2", "D1", "A1", "S1"])
        {
            let g = build(name).unwrap();
            revalidate(&g);
        }
    }

    #[test]
    fn orders() {
        let expect = [
            ("C1", 1),
            ("C7", 7),
            ("S3", 6),
            ("S4", 24),
            ("S5", 120),
            ("A4", 12),
            ("A5", 60),
            ("D4", 8),
            ("Q8", 8),
            ("V4", 4),
            ("S3xC2", 12),
        ];
        for (name, order) in expect {
            assert_eq!(build(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        for name in ["S9", "A6", "X3", "C0", "", "Cfoo", "S3xS9"] {
            assert!(
                matches!(build(name), Err(Error::UnknownCatalog(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn symmetric_names_use_cycles() {
        let s3 = build("S3").unwrap();
        assert_eq!(s3.element_name(0), "e");
        assert_eq!(s3.element_name(1), "(2 3)");
        assert!(s3.element_names().iter().any(|n| n == "(1 2)"));
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(j, j), minus_one);
        assert_eq!(q.mul(k, k), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 7);
    }

    #[test]
    fn c3_x_c2_is_cyclic_of_order_6() {
        assert!(build("C3xC2").unwrap().is_isomorphic(&cyclic(6)));
        assert!(!build("V4").unwrap().is_isomorphic(&cyclic(4)));
        assert!(build("D3").unwrap().is_isomorphic(&symmetric(3)));
    }
}
