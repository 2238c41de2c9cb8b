use super::builder::{h_web, identity_web};
use super::sum::WebSum;
use super::WebsError;
use crate::poly::{GroupAlgebraElement, Permutation};

/// The image of the adjacent transposition `τ_i` (1-based) in the strip
/// algebra on `n` valence-one strands: the identity minus the H web on
/// strands `i, i+1`.
pub fn tau_image(i: usize, n: usize) -> Result<WebSum, WebsError> {
    if i == 0 || i >= n {
        return Err(WebsError::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    let word = vec![1u8; n];
    let id = WebSum::from_web(&identity_web(&word));
    let h = WebSum::from_web(&h_web(&word, i)?);
    Ok(id.sub(&h))
}

/// Reduced product of a word of generators, read right to left as maps: the
/// first listed generator ends up on top.
pub fn tau_word(word: &[usize], n: usize) -> Result<WebSum, WebsError> {
    let mut acc = WebSum::from_web(&identity_web(&vec![1; n]));
    for &i in word.iter().rev() {
        acc = WebSum::concatenate(&tau_image(i, n)?, &acc)?.reduce();
    }
    Ok(acc)
}

/// A word in adjacent transpositions `τ_1, …` (1-based) whose product is `p`,
/// obtained by bubble sort.
pub fn adjacent_word(p: &Permutation) -> Vec<usize> {
    let mut a: Vec<usize> = p.images().to_vec();
    let mut swaps = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for j in 0..a.len().saturating_sub(1) {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                swaps.push(j + 1);
                changed = true;
            }
        }
    }
    swaps.reverse();
    swaps
}

/// The image of a group-algebra element under `τ_i ↦ tau_image(i, n)`.
pub fn group_element_image(g: &GroupAlgebraElement, n: usize) -> Result<WebSum, WebsError> {
    let mut out = WebSum::zero();
    for (p, c) in g.terms() {
        let mut images = p.images().to_vec();
        images.extend(images.len()..n);
        let full = Permutation::new(images);
        let w = tau_word(&adjacent_word(&full), n)?;
        out = out.add(&w.scale(c));
    }
    Ok(out)
}

/// `Σ_σ sgn(σ) σ` over the permutations of strands `start .. start+4`
/// (0-based), mapped into the strip algebra and reduced.
pub fn four_site_antisymmetrizer(n: usize, start: usize) -> Result<WebSum, WebsError> {
    if start + 4 > n {
        return Err(WebsError::IndexOutOfRange {
            index: start,
            max: n.saturating_sub(4),
        });
    }
    let sites: Vec<usize> = (start..start + 4).collect();
    let g = GroupAlgebraElement::antisymmetrizer(n, &sites);
    Ok(group_element_image(&g, n)?.reduce())
}

/// The single web `H_{word[0]} · H_{word[1]} ⋯` on `n` valence-one strands,
/// with the last listed H at the bottom. The scalar from any closed loops
/// created while stacking is returned alongside.
pub fn h_product(word: &[usize], n: usize) -> Result<(num_bigint::BigInt, super::Web), WebsError> {
    let strands = vec![1u8; n];
    let mut acc = identity_web(&strands);
    let mut factor = num_bigint::BigInt::from(1);
    for &i in word.iter().rev() {
        let (f, w) = super::stack(&acc, &h_web(&strands, i)?)?;
        factor *= f;
        acc = w;
    }
    Ok((factor, acc))
}
