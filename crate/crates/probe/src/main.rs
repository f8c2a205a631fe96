use curveword::invariants::*;
use curveword::moves::*;
use curveword::surface::genus;
use curveword::word::*;

fn main() {
    // Exhaustive: uniform-sign forward move-3 sites on spherical words, n <= 4
    let mut total = 0;
    let mut spherical_image = 0;
    for n in 3..=4 {
        for class in enumerate_words(n, true, 6).unwrap() {
            let word = class.word();
            if genus(word).unwrap() != 0 { continue; }
            for site in find_sites(word, MoveKind::Three, Direction::Forward, SignRule::Uniform).unwrap() {
                total += 1;
                let image = apply(word, &site, SignRule::Uniform).unwrap();
                let g = genus(&image).unwrap();
                if g == 0 {
                    spherical_image += 1;
                    let (b, _) = arnold_invariants_unchecked(word).unwrap();
                    let (a, _) = arnold_invariants_unchecked(&image).unwrap();
                    if spherical_image <= 5 {
                        println!("move3 {word} -> {image}: d = ({}, {}, {})",
                            a.j_plus - &b.j_plus, a.j_minus - &b.j_minus, a.strangeness - &b.strangeness);
                    }
                } else if total - spherical_image <= 3 {
                    println!("move3 {word} -> image genus {g}");
                }
            }
        }
    }
    println!("uniform fwd move-3 sites on spherical words n<=4: {total}, spherical images: {spherical_image}");
    // Does a long walk with more letters ever hit move 3?
    for seed in [1u64, 5, 9, 13] {
        let walk = random_spherical(seed, 4000, 14);
        let m3 = walk.log.iter().filter(|s| s.kind == MoveKind::Three).count();
        println!("seed {seed}: 4000 steps, move3 steps = {m3}");
    }
}
