//! Bent friends, extensions and bent spaces.

use crate::function::BooleanFunction;
use crate::walsh::{is_bent, is_bent_boolean, is_bent_word};
use crate::{Anf, Result, VectorialFunction};

/// Affine-free bent candidates f with (F, f) bent: f + F_b bent for every b,
/// b = 0 included. An (n, n/2)-bent F has none.
pub fn bent_friends(
    f: &VectorialFunction,
    candidates: impl IntoIterator<Item = BooleanFunction>,
) -> Vec<BooleanFunction> {
    let n = f.num_vars();
    if 2 * f.num_outputs() >= n {
        return Vec::new();
    }
    let comps = f.components();
    candidates
        .into_iter()
        .filter(|g| g.num_vars() == n && Anf::from_table(g).strip_affine().to_table() == *g)
        .filter(|g| is_bent_boolean(g) && comps.iter().all(|c| is_bent_boolean(&(c ^ g))))
        .collect()
}

/// Friend search over single-word tables (n <= 6); returns the friends in input order.
pub fn bent_friends_packed(f: &VectorialFunction, tables: &[u64]) -> Vec<u64> {
    let n = f.num_vars();
    if 2 * f.num_outputs() >= n || n > 6 {
        return Vec::new();
    }
    let comps: Vec<u64> = f
        .components()
        .iter()
        .map(|c| c.as_u64().expect("n <= 6"))
        .collect();
    tables
        .iter()
        .copied()
        .filter(|&t| comps.iter().all(|&c| is_bent_word(n, c ^ t)))
        .collect()
}

/// The friends f + F_b over all b, which give EA-equivalent extensions of F.
pub fn friend_orbit(f: &VectorialFunction, friend: u64) -> Vec<u64> {
    let mut orbit = vec![friend];
    orbit.extend(
        f.components()
            .iter()
            .map(|c| c.as_u64().expect("n <= 6") ^ friend),
    );
    orbit
}

/// One (n, m)-image of an (n, m+1)-bent G: the components of G indexed by
/// the hyperplane orthogonal to `normal`.
#[derive(Clone, Debug)]
pub struct BentSpace {
    pub normal: u32,
    pub basis: Vec<u32>,
    pub function: VectorialFunction,
}

/// All 2^(m+1) - 1 bent spaces of G, ordered by normal vector.
pub fn bent_spaces(g: &VectorialFunction) -> Result<Vec<BentSpace>> {
    let k = g.num_outputs();
    let mut out = Vec::new();
    for normal in 1u32..1 << k {
        let mut basis: Vec<u32> = Vec::new();
        let mut echelon: Vec<u32> = Vec::new();
        for c in 1u32..1 << k {
            if (c & normal).count_ones() % 2 == 1 {
                continue;
            }
            let mut r = c;
            for &e in &echelon {
                r = r.min(r ^ e);
            }
            if r != 0 {
                echelon.push(r);
                echelon.sort_unstable_by(|a, b| b.cmp(a));
                basis.push(c);
            }
        }
        let coords = basis
            .iter()
            .map(|&c| g.component(c))
            .collect::<Result<Vec<_>>>()?;
        out.push(BentSpace {
            normal,
            basis,
            function: VectorialFunction::new(coords)?,
        });
    }
    debug_assert!(!is_bent(g) || out.iter().all(|s| is_bent(&s.function)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::enumerate::enumerate_affine_free_bent;

    fn vf(n: usize, coords: &[&str]) -> VectorialFunction {
        VectorialFunction::parse(n, coords, false).unwrap()
    }

    #[test]
    fn n4_friends_agree_between_routes() {
        let f = vf(4, &["x1*x2 + x3*x4"]);
        let all: Vec<BooleanFunction> = enumerate_affine_free_bent(4).unwrap().collect();
        let slow = bent_friends(&f, all.iter().cloned());
        let tables: Vec<u64> = all.iter().map(|g| g.as_u64().unwrap()).collect();
        let fast = bent_friends_packed(&f, &tables);
        assert!(!slow.is_empty());
        assert_eq!(
            slow.iter().map(|g| g.as_u64().unwrap()).collect::<Vec<_>>(),
            fast
        );
        for g in &slow {
            assert!(is_bent(&f.extend(g.clone()).unwrap()));
        }
    }

    #[test]
    fn half_dimension_is_lonely() {
        let f = vf(4, &["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2*x4"]);
        assert!(is_bent(&f));
        let all = enumerate_affine_free_bent(4).unwrap();
        assert!(bent_friends(&f, all).is_empty());
    }

    #[test]
    fn orbit_members_are_friends() {
        let f = vf(4, &["x1*x2 + x3*x4"]);
        let tables: Vec<u64> = enumerate_affine_free_bent(4)
            .unwrap()
            .map(|g| g.as_u64().unwrap())
            .collect();
        let fr = bent_friends_packed(&f, &tables);
        for &g in &fr {
            for h in friend_orbit(&f, g) {
                assert!(fr.contains(&h));
            }
        }
    }

    #[test]
    fn space_counts() {
        let g = vf(4, &["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2*x4"]);
        let s = bent_spaces(&g).unwrap();
        assert_eq!(s.len(), 3);
        let g3 = crate::constructions::catalog(3, 1).unwrap().function();
        let s3 = bent_spaces(&g3).unwrap();
        assert_eq!(s3.len(), 7);
        for sp in &s3 {
            assert_eq!(sp.function.num_outputs(), 2);
            assert!(is_bent(&sp.function));
            assert!(sp
                .basis
                .iter()
                .all(|&c| (c & sp.normal).count_ones() % 2 == 0));
        }
        let mut sets: Vec<Vec<BooleanFunction>> = s3
            .iter()
            .map(|sp| {
                let mut c = sp.function.components();
                c.sort_by_key(|b| b.words().to_vec());
                c
            })
            .collect();
        sets.sort_by_key(|v| v.iter().map(|b| b.words().to_vec()).collect::<Vec<_>>());
        sets.dedup();
        assert_eq!(sets.len(), 7);
    }
}
