//! Bounded search for a canonical basis of an involution.
//!
//! The search conjugates by Whitehead generators. It first descends
//! greedily in the total length of the basis images; when no single move
//! shortens them it explores the plateau breadth first, up to `depth`
//! moves, looking for a shorter or canonical conjugate.

use std::collections::{HashSet, VecDeque};

use crate::automorphisms::{cached_whitehead_generators, Automorphism, Endomorphism};
use crate::words::Word;

use super::{build_canonical, layout, recognize_images, CanonicalData, CanonicalInvolution, Role};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Longest run of non-shortening moves explored on a plateau.
    pub depth: usize,
    /// Most conjugates held during one plateau exploration.
    pub frontier_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: 4,
            frontier_cap: 4096,
        }
    }
}

/// A conjugator `rho` with `rho⁻¹ ∘ f ∘ rho` equal to the standard
/// canonical involution of shape `canonical.data`.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub conjugator: Automorphism,
    pub canonical: CanonicalInvolution,
}

impl CanonicalBasis {
    pub fn data(&self) -> &CanonicalData {
        &self.canonical.data
    }

    /// The canonical basis itself, as words: the images of the standard
    /// generators under the conjugator.
    pub fn basis(&self) -> Vec<Word> {
        self.conjugator.images().to_vec()
    }
}

fn conjugate(h: &Endomorphism, g: &Automorphism) -> Option<Endomorphism> {
    g.backward().compose(&h.compose(g.forward()).ok()?).ok()
}

/// Looks for a canonical basis of the involution `f`. Returns `None` when
/// `f` is not an involution or the search gives up.
pub fn find_canonical_basis(f: &Automorphism, config: &SearchConfig) -> Option<CanonicalBasis> {
    if !f.is_involution() {
        return None;
    }
    let rank = f.rank();
    let gens = cached_whitehead_generators(rank);
    let mut rho = Automorphism::identity(rank);
    let mut h = f.forward().clone();
    loop {
        if let Some((data, roles)) = recognize_images(&h) {
            return finish(f, rho, &data, &roles);
        }
        let current = h.total_image_len();
        let mut best: Option<(usize, Endomorphism)> = None;
        for (id, g) in gens.iter().enumerate() {
            if let Some(c) = conjugate(&h, g) {
                let len = c.total_image_len();
                if len < best.as_ref().map_or(current, |b| b.1.total_image_len()) {
                    best = Some((id, c));
                }
            }
        }
        if let Some((id, c)) = best {
            rho = rho.compose(&gens[id]).ok()?;
            h = c;
            continue;
        }
        let (path, c) = plateau(&h, &gens, config)?;
        for id in path {
            rho = rho.compose(&gens[id]).ok()?;
        }
        h = c;
    }
}

/// Breadth-first walk over conjugates no longer than `h`, stopping at the
/// first one that is shorter or canonical.
fn plateau(
    h: &Endomorphism,
    gens: &[Automorphism],
    config: &SearchConfig,
) -> Option<(Vec<usize>, Endomorphism)> {
    let bound = h.total_image_len();
    let mut nodes: Vec<(Endomorphism, usize, usize)> = vec![(h.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashSet<Endomorphism> = HashSet::from([h.clone()]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((node, depth)) = queue.pop_front() {
        if depth == config.depth {
            continue;
        }
        for (id, g) in gens.iter().enumerate() {
            let Some(c) = conjugate(&nodes[node].0, g) else {
                continue;
            };
            let len = c.total_image_len();
            if len > bound || seen.contains(&c) {
                continue;
            }
            if len < bound || recognize_images(&c).is_some() {
                let mut path = vec![id];
                let mut at = node;
                while at != 0 {
                    path.push(nodes[at].2);
                    at = nodes[at].1;
                }
                path.reverse();
                return Some((path, c));
            }
            if seen.len() >= config.frontier_cap {
                return None;
            }
            seen.insert(c.clone());
            nodes.push((c, node, id));
            queue.push_back((nodes.len() - 1, depth + 1));
        }
    }
    None
}

/// Reorders the canonical basis found into the standard layout.
fn finish(
    f: &Automorphism,
    rho: Automorphism,
    data: &CanonicalData,
    roles: &[Role],
) -> Option<CanonicalBasis> {
    let rank = f.rank();
    let target = layout(data);
    let of = |keep: &dyn Fn(Role) -> bool| -> Vec<usize> {
        (1..=rank).filter(|&i| keep(roles[i - 1])).collect()
    };
    let mut heads = of(&|r| r == Role::Head);
    let tail = |h: usize| of(&|r| r == Role::Conjugated { head: h });
    heads.sort_by_key(|&h| std::cmp::Reverse(tail(h).len()));
    let mut assign: Vec<usize> = of(&|r| r == Role::Fixed);
    for i in of(&|r| matches!(r, Role::PairFirst { .. })) {
        let Role::PairFirst { partner } = roles[i - 1] else {
            unreachable!()
        };
        assign.push(i);
        assign.push(partner);
    }
    for h in heads {
        assign.push(h);
        assign.extend(tail(h));
    }
    debug_assert_eq!(assign.len(), target.len());
    let mut inverse = vec![0; rank];
    for (j, &i) in assign.iter().enumerate() {
        inverse[i - 1] = j + 1;
    }
    let perm = Automorphism::new(
        assign.iter().map(|&i| Word::generator(rank, i)).collect(),
        inverse.iter().map(|&j| Word::generator(rank, j)).collect(),
    )
    .ok()?;
    let conjugator = rho.compose(&perm).ok()?;
    let canonical = build_canonical(data, rank).ok()?;
    if f.conjugate_by(&conjugator).ok()? != canonical.automorphism {
        return None;
    }
    Some(CanonicalBasis {
        conjugator,
        canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::random_automorphism_with;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn canonical_input_needs_no_moves() {
        let d = CanonicalData::new(1, 0, vec![2]).unwrap();
        let f = build_canonical(&d, 3).unwrap();
        let b = find_canonical_basis(&f.automorphism, &SearchConfig::default()).unwrap();
        assert_eq!(b.data(), &d);
        assert!(b.conjugator.is_identity());
    }

    #[test]
    fn twisted_block_is_recognized() {
        let f = Automorphism::from_involution(vec![w("X1", 2), w("X1 x2 X1", 2)]).unwrap();
        let b = find_canonical_basis(&f, &SearchConfig::default()).unwrap();
        assert_eq!(b.data(), &CanonicalData::new(0, 0, vec![2]).unwrap());
    }

    #[test]
    fn random_conjugates_are_canonicalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let config = SearchConfig::default();
        for rank in 2..=4 {
            for d in CanonicalData::enumerate(rank) {
                let f = build_canonical(&d, rank).unwrap().automorphism;
                for _ in 0..4 {
                    let s = random_automorphism_with(rank, rng.gen_range(1..8), &mut rng).unwrap();
                    let g = f.conjugate_by(&s).unwrap();
                    let b = find_canonical_basis(&g, &config)
                        .unwrap_or_else(|| panic!("no canonical basis for {g} ({d})"));
                    assert_eq!(b.data(), &d);
                    assert_eq!(g.conjugate_by(&b.conjugator).unwrap(), f);
                }
            }
        }
    }
}
