//! Structural properties of reduced words, checked exhaustively by the test
//! suite: what may sit between consecutive occurrences of a generator, and
//! how normal-form blocks chain together.

use super::{commutes, GenSet, TraceWord};

/// Positions of the dependent letters strictly between each pair of
/// consecutive occurrences of `g`. Dependent letters are comparable with both
/// occurrences, so membership does not depend on the chosen representative.
fn dependent_between(letters: &[u8], g: u8) -> Vec<Vec<u8>> {
    let occ: Vec<usize> = (0..letters.len()).filter(|&k| letters[k] == g).collect();
    occ.windows(2)
        .map(|w| {
            letters[w[0] + 1..w[1]]
                .iter()
                .copied()
                .filter(|&a| !commutes(a, g))
                .collect()
        })
        .collect()
}

/// Between consecutive occurrences of a boundary generator there is exactly
/// one dependent letter; between consecutive occurrences of an inner
/// generator there are exactly two, of distinct types.
pub fn check_occurrence_counts(w: &TraceWord) -> Result<(), String> {
    let n = w.n() as u8;
    let letters = w.canonical();
    let letters = letters.letters();
    for g in 0..=n {
        for (k, between) in dependent_between(letters, g).iter().enumerate() {
            if g == 0 || g == n {
                if between.len() != 1 {
                    return Err(format!(
                        "word {w}: consecutive E{g} pair {k} has {} dependent letters, expected 1",
                        between.len()
                    ));
                }
            } else {
                if between.len() != 2 || between[0] == between[1] {
                    return Err(format!(
                        "word {w}: consecutive E{g} pair {k} has dependents {:?}, expected two distinct",
                        between
                    ));
                }
            }
        }
    }
    Ok(())
}

/// When every dependent letter between consecutive occurrences of `s` has a
/// single type `t`, that type occurs exactly once and `s` is a boundary
/// generator.
pub fn check_single_type_between(w: &TraceWord) -> Result<(), String> {
    let n = w.n() as u8;
    let letters = w.canonical();
    let letters = letters.letters();
    for g in 0..=n {
        for (k, between) in dependent_between(letters, g).iter().enumerate() {
            let Some(&first) = between.first() else {
                return Err(format!(
                    "word {w}: consecutive E{g} pair {k} with nothing dependent between (not reduced)"
                ));
            };
            if between.iter().all(|&a| a == first) {
                if between.len() != 1 {
                    return Err(format!(
                        "word {w}: single-type dependents between E{g} pair {k} occur {} times",
                        between.len()
                    ));
                }
                if g != 0 && g != n {
                    return Err(format!(
                        "word {w}: single-type window around inner generator E{g}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// For a reduced word that is not left reducible: a generator in a
/// normal-form block forces its dependent neighbours into the previous block
/// (both neighbours for inner generators).
pub fn check_block_support(w: &TraceWord) -> Result<(), String> {
    let n = w.n() as u8;
    let blocks = w.cartier_foata().blocks;
    for i in 0..blocks.len().saturating_sub(1) {
        let (prev, next) = (GenSet(blocks[i]), GenSet(blocks[i + 1]));
        for g in next.iter() {
            let needed: Vec<u8> = if g == 0 {
                vec![1]
            } else if g == n {
                vec![n - 1]
            } else {
                vec![g - 1, g + 1]
            };
            for need in needed {
                if !prev.contains(need) {
                    return Err(format!(
                        "word {w}: E{g} in block {} without E{need} in block {}",
                        i + 2,
                        i + 1
                    ));
                }
            }
        }
    }
    Ok(())
}
