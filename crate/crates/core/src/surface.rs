//! Ribbon-surface reconstruction and genus of a signed word.
//!
//! Each letter becomes a 4-valent vertex of a combinatorial map. The local
//! convention, fixed once here and relied on by the invariant modules:
//!
//! - pass 1 (the first occurrence) runs west -> east;
//! - pass 2 runs south -> north for sign `+`, north -> south for sign `-`;
//! - the counterclockwise slot order at a vertex is W, S, E, N;
//! - edges pair the exit slot of each occurrence with the entry slot of the
//!   next occurrence along the word (cyclically);
//! - faces are traced by "next half-edge = rotation successor of the
//!   opposite end of the current edge".
//!
//! Capping the traced boundary circles with disks closes the ribbon surface,
//! so with `V = n`, `E = 2n`, `F` faces the genus is `(2 + n - F) / 2`. The
//! empty word is the trivial curve: its neighborhood is an annulus with two
//! boundary circles, giving genus 0.

use std::collections::BTreeMap;

use crate::word::{LetterId, Sign, SignedWord};
use crate::Error;

/// Slots around a vertex in counterclockwise order.
const SLOT_W: usize = 0;
const SLOT_S: usize = 1;
const SLOT_E: usize = 2;
const SLOT_N: usize = 3;

/// The rotation system of a word: one 4-slot vertex per letter and the edge
/// involution on the `4n` half-edges (a fixed-point-free perfect pairing).
#[derive(Clone, Debug)]
pub struct RotationSystem {
    vertex_count: usize,
    edge_pair: Vec<usize>,
}

impl RotationSystem {
    /// Builds the rotation system of a non-singular word.
    pub fn new(word: &SignedWord) -> Result<RotationSystem, Error> {
        if word.has_singular() {
            return Err(Error::SingularUnsupported);
        }
        let n = word.letter_count();
        let rank: BTreeMap<LetterId, usize> =
            word.letters().keys().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut edge_pair = vec![usize::MAX; 4 * n];
        let mut seen: BTreeMap<LetterId, ()> = BTreeMap::new();
        let len = word.len();
        let mut entries = Vec::with_capacity(len);
        let mut exits = Vec::with_capacity(len);
        for &id in word.occurrences() {
            let v = rank[&id];
            let (enter, exit) = if seen.insert(id, ()).is_none() {
                (SLOT_W, SLOT_E)
            } else {
                match word.letter(id).expect("letter in table").sign {
                    Sign::Plus => (SLOT_S, SLOT_N),
                    Sign::Minus => (SLOT_N, SLOT_S),
                }
            };
            entries.push(4 * v + enter);
            exits.push(4 * v + exit);
        }
        for i in 0..len {
            let a = exits[i];
            let b = entries[(i + 1) % len];
            edge_pair[a] = b;
            edge_pair[b] = a;
        }
        debug_assert!(edge_pair.iter().all(|&h| h != usize::MAX));
        Ok(RotationSystem { vertex_count: n, edge_pair })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn half_edge_count(&self) -> usize {
        self.edge_pair.len()
    }

    /// Counterclockwise successor at the vertex.
    fn rotation(&self, half_edge: usize) -> usize {
        4 * (half_edge / 4) + (half_edge % 4 + 1) % 4
    }

    /// Number of face orbits of `h -> rotation(edge_pair(h))`.
    pub fn face_count(&self) -> usize {
        let mut visited = vec![false; self.edge_pair.len()];
        let mut faces = 0;
        for start in 0..self.edge_pair.len() {
            if visited[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !visited[h] {
                visited[h] = true;
                h = self.rotation(self.edge_pair[h]);
            }
        }
        faces
    }
}

/// Genus and face count of the closed surface carrying the word's curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    pub genus: usize,
    pub faces: usize,
}

/// Computes genus and face count. For the empty word the neighborhood is an
/// annulus: two faces, genus 0.
pub fn surface_data(word: &SignedWord) -> Result<SurfaceData, Error> {
    if word.is_empty() && !word.has_singular() {
        return Ok(SurfaceData { genus: 0, faces: 2 });
    }
    let system = RotationSystem::new(word)?;
    let n = system.vertex_count();
    let faces = system.face_count();
    let doubled = 2 + n - faces;
    debug_assert!(doubled % 2 == 0, "Euler characteristic of a closed oriented surface is even");
    Ok(SurfaceData { genus: doubled / 2, faces })
}

/// Genus of the minimal closed surface of the word.
pub fn genus(word: &SignedWord) -> Result<usize, Error> {
    Ok(surface_data(word)?.genus)
}

/// True exactly when the word represents a curve on the sphere.
pub fn is_spherical(word: &SignedWord) -> Result<bool, Error> {
    Ok(genus(word)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::shift_orbit;
    use crate::word::{enumerate_words, parse, DEFAULT_ENUMERATION_LIMIT};

    fn w(text: &str) -> SignedWord {
        parse(text).unwrap()
    }

    #[test]
    fn empty_word_is_an_annulus() {
        assert_eq!(surface_data(&w("")).unwrap(), SurfaceData { genus: 0, faces: 2 });
        assert!(is_spherical(&w("")).unwrap());
    }

    #[test]
    fn one_crossing_curves_are_planar() {
        // Hand-traced for A A: the W and E slots close into monogons and
        // {S, N} into a bigon, so F = 3 and genus = (2 + 1 - 3) / 2 = 0.
        assert_eq!(surface_data(&w("A A")).unwrap(), SurfaceData { genus: 0, faces: 3 });
        assert_eq!(surface_data(&w("-A -A")).unwrap(), SurfaceData { genus: 0, faces: 3 });
    }

    #[test]
    fn chain_and_hairpin_words_are_spherical() {
        for text in ["A A B B", "A -B -B A", "A A -B -B", "-A B B -A"] {
            assert_eq!(genus(&w(text)).unwrap(), 0, "{text}");
            assert_eq!(surface_data(&w(text)).unwrap().faces, 4, "{text}");
        }
    }

    #[test]
    fn alternating_two_letter_words_are_toral() {
        for text in ["A B A B", "A -B A -B", "-A B -A B", "-A -B -A -B"] {
            assert_eq!(
                surface_data(&w(text)).unwrap(),
                SurfaceData { genus: 1, faces: 2 },
                "{text}"
            );
        }
    }

    #[test]
    fn singular_words_are_rejected() {
        assert!(matches!(genus(&w("A* A*")), Err(Error::SingularUnsupported)));
    }

    #[test]
    fn spherical_partition_of_short_classes() {
        // Frozen fixture: of the 15 classes of length <= 4, exactly the four
        // alternating sign classes are non-spherical.
        let mut spherical = Vec::new();
        let mut non_spherical = Vec::new();
        for n in 0..=2 {
            for class in enumerate_words(n, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                if is_spherical(class.word()).unwrap() {
                    spherical.push(class.to_string());
                } else {
                    non_spherical.push(class.to_string());
                }
            }
        }
        assert_eq!(spherical.len(), 11);
        assert_eq!(
            non_spherical,
            ["A B A B", "A -B A -B", "-A B -A B", "-A -B -A -B"]
        );
    }

    #[test]
    fn genus_is_constant_on_shift_orbits() {
        for n in 0..=3 {
            for class in enumerate_words(n, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                let g = genus(class.word()).unwrap();
                for member in shift_orbit(class.word()).unwrap() {
                    assert_eq!(genus(member.word()).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn genus_respects_mirror_symmetries() {
        for n in 0..=3 {
            for class in enumerate_words(n, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                let g = genus(class.word()).unwrap();
                assert_eq!(genus(&class.word().sign_flipped()).unwrap(), g);
                assert_eq!(genus(&class.word().reversed()).unwrap(), g);
            }
        }
    }

    #[test]
    fn genus_under_disjoint_concatenation() {
        // Splicing two diagrams along their closing arcs yields the genus sum
        // when each closing arc borders two distinct faces, and one less when
        // a closing arc borders a single face twice (the handle is reused).
        // Both cases occur; deviation never exceeds 1, so concatenation of
        // spherical blocks stays spherical.
        let mut deviations = std::collections::BTreeSet::new();
        for n in 0..=2 {
            for u in enumerate_words(n, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                for m in 0..=2 {
                    for v in enumerate_words(m, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                        let joined = u.word().concat_disjoint(v.word());
                        let sum = genus(u.word()).unwrap() + genus(v.word()).unwrap();
                        let joined_genus = genus(&joined).unwrap();
                        assert!(
                            joined_genus == sum || joined_genus + 1 == sum,
                            "{u} ++ {v}: genus {joined_genus}, blocks sum to {sum}"
                        );
                        if sum == 0 {
                            assert_eq!(joined_genus, 0, "{u} ++ {v}");
                        }
                        deviations.insert(sum - joined_genus);
                    }
                }
            }
        }
        assert_eq!(deviations, std::collections::BTreeSet::from([0, 1]));

        // Frozen instances of both cases.
        let additive = w("A B A B").concat_disjoint(&w("A B A B"));
        assert_eq!(genus(&additive).unwrap(), 2);
        let handle_reusing = w("-A B -A B").concat_disjoint(&w("-A B -A B"));
        assert_eq!(genus(&handle_reusing).unwrap(), 1);
    }

    #[test]
    fn genus_bounds() {
        for n in 0..=3 {
            for class in enumerate_words(n, true, DEFAULT_ENUMERATION_LIMIT).unwrap() {
                let data = surface_data(class.word()).unwrap();
                assert!(data.faces >= 1);
                assert!(data.genus <= (n + 1) / 2);
            }
        }
    }

    #[test]
    fn spherical_words_have_even_interlacement() {
        // Independent necessary criterion: on the sphere, the loop based at a
        // crossing meets the complementary loop evenly, so every letter of a
        // spherical word interleaves an even number of other letters.
        for n in 0..=4 {
            for class in enumerate_words(n, true, 6).unwrap() {
                if !is_spherical(class.word()).unwrap() {
                    continue;
                }
                let word = class.word();
                for (&id, _) in word.letters() {
                    let (a, b) = word.positions(id).unwrap();
                    let interleaved = word
                        .letters()
                        .keys()
                        .filter(|&&other| {
                            if other == id {
                                return false;
                            }
                            let (c, d) = word.positions(other).unwrap();
                            (a < c && c < b) != (a < d && d < b)
                        })
                        .count();
                    assert_eq!(interleaved % 2, 0, "letter {id} of {class}");
                }
            }
        }
    }
}
