use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::combinatorics::{enumerate_tableaux, Signature, TableauKind};
use crate::poly::q;

fn int(k: i64) -> BigRational {
    q(k)
}

fn sum_of(terms: &[(i64, &Web)]) -> WebSum {
    let mut s = WebSum::zero();
    for (c, w) in terms {
        s.add_web(&int(*c), w);
    }
    s
}

fn strands(n: usize) -> Vec<u8> {
    vec![1; n]
}

#[test]
fn closed_loop_is_three() {
    let l = Web::closed_loop();
    assert!(l.is_valid());
    let r = reduce(&l);
    assert_eq!(r.len(), 1);
    let (w, c) = r.terms().next().unwrap();
    assert_eq!(w.num_vertices(), 0);
    assert_eq!(*c, int(3));
}

#[test]
fn theta_is_six_through_its_digon() {
    let t = Web::theta();
    assert!(t.is_valid());
    assert_eq!(t.tait_colorings(&[0, 1]), BigInt::from(6));
    assert_eq!(reduce(&t).terms().next().map(|(_, c)| c.clone()), Some(int(6)));
}

#[test]
fn digon_collapses_with_factor_two() {
    let w = strands(2);
    let h = h_web(&w, 1).unwrap();
    let (f, hh) = stack(&h, &h).unwrap();
    assert!(f.is_one());
    assert_eq!(reducible_faces(&hh).len(), 1);
    assert!(matches!(reducible_faces(&hh)[0], Reducible::Digon(_)));
    let r = reduce(&hh);
    assert_eq!(r, sum_of(&[(2, &h)]));
}

#[test]
fn square_splits_into_two_resolutions() {
    // H_1 H_2 H_1 on three strands has one square face.
    let (f, w) = h_product(&[1, 2, 1], 3).unwrap();
    assert!(f.is_one());
    let faces = reducible_faces(&w);
    assert_eq!(faces.len(), 1);
    assert!(matches!(faces[0], Reducible::Square(_)));
    let parts = apply(&w, &faces[0]);
    assert_eq!(parts.len(), 2);
    let expected = sum_of(&[(1, &parts[0].1), (1, &parts[1].1)]);
    assert_eq!(reduce(&w), expected.reduce());
    let h1 = h_web(&strands(3), 1).unwrap();
    let (_, h2) = h_product(&[2], 3).unwrap();
    let (_, x) = h_product(&[1, 2, 1], 3).unwrap();
    let r = reduce(&x);
    assert_eq!(r.len(), 2);
    assert!(r.terms().all(|(_, c)| c.is_one()));
    assert_eq!(r.coefficient_of(&h1), int(1));
    assert_eq!(r.coefficient_of(&h2), BigRational::zero());
    let other: Vec<usize> = r
        .terms()
        .filter(|(w, _)| w.key() != h1.key())
        .map(|(w, _)| w.num_internal())
        .collect();
    assert_eq!(other, vec![2]);
}

#[test]
fn product_of_w2_and_w1_has_two_reduced_terms() {
    let word = strands(3);
    let w1 = WebSum::from_web(&h_web(&word, 1).unwrap());
    let w2 = WebSum::from_web(&h_product(&[1, 2], 3).unwrap().1);
    let p = WebSum::concatenate(&w2, &w1).unwrap().reduce();
    assert_eq!(p.len(), 2);
    assert!(p.terms().all(|(w, c)| c.is_one() && is_reduced(w)));
}

#[test]
fn three_terms_with_coefficient_six() {
    let (f, body) = h_product(&[1, 1, 2, 1, 3, 2], 4).unwrap();
    assert!(f.is_one());
    let web = body.beside(&Web::closed_loop());
    assert!(web.is_valid());
    let r = reduce(&web);
    assert_eq!(r.len(), 3);
    assert!(r.terms().all(|(w, c)| *c == int(6) && is_reduced(w)));
}

#[test]
fn identity_is_a_unit() {
    let word = [1u8, 2, 2, 1];
    let id = identity_web(&word);
    let h = h_web(&word, 2).unwrap();
    let (f, left) = stack(&h, &id).unwrap();
    assert!(f.is_one());
    assert_eq!(left.key(), h.key());
    let (_, right) = stack(&id, &h).unwrap();
    assert_eq!(right.key(), h.key());
}

#[test]
fn stacking_checks_boundaries() {
    let a = identity_web(&[1, 2]);
    let b = identity_web(&[2, 1]);
    assert_eq!(
        stack(&a, &b).unwrap_err(),
        WebsError::BoundaryMismatch {
            lower_top: vec![1, 2],
            upper_bottom: vec![2, 1]
        }
    );
}

#[test]
fn tau_squares_to_one() {
    for n in 2..=4 {
        let id = WebSum::from_web(&identity_web(&strands(n)));
        for i in 1..n {
            let t = tau_image(i, n).unwrap();
            let t2 = WebSum::concatenate(&t, &t).unwrap();
            assert!(t2.reduce_equal(&id), "n={n} i={i}");
        }
    }
    assert!(tau_image(0, 3).is_err());
    assert!(tau_image(3, 3).is_err());
}

#[test]
fn braid_and_commutation_relations() {
    for n in 3..=5 {
        for i in 1..n - 1 {
            let a = tau_word(&[i, i + 1, i], n).unwrap();
            let b = tau_word(&[i + 1, i, i + 1], n).unwrap();
            assert!(a.reduce_equal(&b), "braid n={n} i={i}");
        }
        for i in 1..n {
            for j in i + 2..n {
                let a = tau_word(&[i, j], n).unwrap();
                let b = tau_word(&[j, i], n).unwrap();
                assert!(a.reduce_equal(&b), "commute n={n} {i},{j}");
            }
        }
    }
}

#[test]
fn four_site_antisymmetrizer_vanishes() {
    for n in 4..=5 {
        for start in 0..=n - 4 {
            assert!(four_site_antisymmetrizer(n, start).unwrap().is_zero(), "n={n}");
        }
    }
}

#[test]
fn three_site_antisymmetrizer_survives() {
    let g = crate::poly::GroupAlgebraElement::antisymmetrizer(3, &[0, 1, 2]);
    assert!(!group_element_image(&g, 3).unwrap().reduce().is_zero());
}

#[test]
fn adjacent_words_multiply_back() {
    use crate::poly::Permutation;
    for p in Permutation::all(4) {
        let word = adjacent_word(&p);
        let mut acc = Permutation::identity(4);
        for &i in &word {
            acc = acc.compose(&Permutation::transposition(4, i - 1, i));
        }
        assert!(acc == p || acc == inverse(&p), "{p:?}");
    }
}

fn inverse(p: &crate::poly::Permutation) -> crate::poly::Permutation {
    let mut inv = vec![0; p.degree()];
    for (i, &j) in p.images().iter().enumerate() {
        inv[j] = i;
    }
    crate::poly::Permutation::new(inv)
}

#[test]
fn harvest_sizes_match_kostka_numbers() {
    for (w, count) in [
        (&[1u8, 2][..], 1),
        (&[1, 1, 1], 1),
        (&[1, 1, 2, 2], 2),
        (&[1, 2, 2, 1], 2),
        (&[1; 6], 5),
        (&[1, 2, 1, 2, 1, 2], 6),
    ] {
        let sig = Signature::new(w).unwrap();
        let webs = harvest_reduced(&sig).unwrap();
        assert_eq!(webs.len(), count, "{w:?}");
        assert!(webs.iter().all(|x| is_reduced(x) && x.is_valid()));
    }
    for w in [&[2u8, 2, 2, 1, 1, 1][..], &[1, 1, 1, 1, 1, 2, 2]] {
        assert!(harvest_reduced(&Signature::new(w).unwrap()).is_ok(), "{w:?}");
    }
}

#[test]
fn harvest_for_1122_has_one_web_with_internal_vertices() {
    let webs = harvest_reduced(&Signature::new(&[1, 1, 2, 2]).unwrap()).unwrap();
    let mut internal: Vec<usize> = webs.iter().map(|w| w.num_internal()).collect();
    internal.sort_unstable();
    assert_eq!(internal, vec![0, 2]);
}

fn gold(sig: &[u8]) -> Vec<Vec<i64>> {
    matrix_m(&Signature::new(sig).unwrap()).unwrap().m_as_i64()
}

#[test]
fn change_of_basis_1122() {
    assert_eq!(gold(&[1, 1, 2, 2]), vec![vec![1, 0], vec![1, 1]]);
    let inv = pure_partition_coeffs(&Signature::new(&[1, 1, 2, 2]).unwrap()).unwrap();
    assert_eq!(inv, vec![vec![int(1), int(0)], vec![int(-1), int(1)]]);
}

#[test]
fn change_of_basis_six_valence_one_points() {
    assert_eq!(
        gold(&[1; 6]),
        vec![
            vec![1, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![1, 1, 1, 1, 0],
            vec![1, 1, 1, 1, 1],
        ]
    );
}

#[test]
fn change_of_basis_alternating() {
    assert_eq!(
        gold(&[1, 2, 1, 2, 1, 2]),
        vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
            vec![0, 1, 1, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 0],
            vec![1, 2, 1, 1, 1, 1],
        ]
    );
}

#[test]
fn inverse_is_exact() {
    for w in [
        &[1u8, 1, 2, 2][..],
        &[1; 6],
        &[1, 2, 1, 2, 1, 2],
        &[2, 1, 1, 2, 1, 2],
    ] {
        let cb = matrix_m(&Signature::new(w).unwrap()).unwrap();
        let n = cb.size();
        for i in 0..n {
            assert!(cb.m[i][i].is_one());
            for j in 0..n {
                assert!(cb.m[i][j] >= BigInt::zero());
                if j > i {
                    assert!(cb.m[i][j].is_zero());
                }
                let s: BigRational = (0..n)
                    .map(|k| BigRational::from_integer(cb.m[i][k].clone()) * &cb.m_inv[k][j])
                    .sum();
                assert_eq!(s, if i == j { int(1) } else { int(0) });
            }
        }
    }
}

#[test]
fn evaluation_rejects_wrong_content() {
    let sig = Signature::new(&[1, 1, 2, 2]).unwrap();
    let other = Signature::new(&[1, 2, 1, 2]).unwrap();
    let webs = harvest_reduced(&sig).unwrap();
    let t = &enumerate_tableaux(&other.pi(), &other.content(), TableauKind::Rsyt).unwrap()[0];
    assert_eq!(tensor_value(&webs[0], t, &other), Err(WebsError::ContentMismatch));
}

#[test]
fn json_round_trip() {
    let (_, w) = h_product(&[1, 2, 1], 3).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    let back: Web = serde_json::from_str(&text).unwrap();
    assert_eq!(back, w);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.get("boundary").is_some() && v.get("vertices").is_some() && v.get("edges").is_some());
}

#[test]
fn mirror_is_an_involution_preserving_validity() {
    for w in harvest_reduced(&Signature::new(&[1, 2, 1, 2, 1, 2]).unwrap()).unwrap() {
        let m = w.mirror();
        assert!(m.is_valid());
        assert_eq!(m.mirror().key(), w.key());
    }
}

/// A random half-plane web obtained by stacking random caps, merges and
/// sideways H's, without reducing in between.
fn random_half_plane_web(word: &[u8], rng: &mut ChaCha8Rng, h_budget: usize) -> (BigInt, Web) {
    if word.is_empty() {
        return (BigInt::one(), Web::empty());
    }
    let i = rng.gen_range(1..word.len());
    let use_h = word[i - 1] != word[i] && h_budget > 0 && rng.gen_bool(0.4);
    let (mv, budget) = if use_h {
        (h_web(word, i).unwrap(), h_budget - 1)
    } else if word[i - 1] == word[i] {
        (merge_web(word, i).unwrap(), h_budget)
    } else {
        (cap_web(word, i).unwrap(), h_budget)
    };
    let (f, inner) = random_half_plane_web(&mv.top, rng, budget);
    let (g, w) = stack(&mv, &inner).unwrap();
    (f * g, w)
}

fn random_word(rng: &mut ChaCha8Rng) -> Vec<u8> {
    loop {
        let len = rng.gen_range(2..=7);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=2)).collect();
        if w.iter().map(|&s| s as usize).sum::<usize>() % 3 == 0 {
            return w;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_confluent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng);
        let (f, w) = random_half_plane_web(&word, &mut rng, 4);
        let mut s = WebSum::zero();
        s.add_web(&BigRational::from_integer(f), &w);
        let reference = s.reduce();
        for k in 0..100 {
            prop_assert_eq!(&s.reduce_in_random_order(seed ^ k), &reference);
        }
        prop_assert_eq!(&reference.reduce(), &reference);
    }

    #[test]
    fn evaluation_factors_through_reduction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng);
        let sig = Signature::new(&word).unwrap();
        let (_, w) = random_half_plane_web(&word, &mut rng, 4);
        let reduced = reduce(&w);
        for t in enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt).unwrap() {
            let direct = BigRational::from_integer(tensor_value(&w, &t, &sig).unwrap());
            let via: BigRational = reduced
                .terms()
                .map(|(r, c)| c * BigRational::from_integer(tensor_value(r, &t, &sig).unwrap()))
                .sum();
            prop_assert_eq!(direct, via);
        }
    }

    #[test]
    fn keys_do_not_depend_on_labels(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng);
        let (_, w) = random_half_plane_web(&word, &mut rng, 2);
        let shuffled = relabel(&w, &mut rng);
        prop_assert!(shuffled.is_valid());
        prop_assert_eq!(shuffled.key(), w.key());
    }
}

/// The same web with vertices and half-edges renumbered at random and each
/// rotation started at a random position.
fn relabel(w: &Web, rng: &mut ChaCha8Rng) -> Web {
    use rand::seq::SliceRandom;
    let mut vperm: Vec<usize> = (0..w.num_vertices()).collect();
    vperm.shuffle(rng);
    let nh = 2 * w.num_edges();
    let mut hperm: Vec<usize> = (0..nh).collect();
    hperm.shuffle(rng);
    let mut kinds = vec![VertexKind::Internal; w.num_vertices()];
    let mut rot = vec![Vec::new(); w.num_vertices()];
    for v in 0..w.num_vertices() {
        kinds[vperm[v]] = w.kinds()[v];
        let mut r: Vec<usize> = w.rotation(v).iter().map(|&h| hperm[h]).collect();
        if !r.is_empty() {
            let k = rng.gen_range(0..r.len());
            r.rotate_left(k);
        }
        rot[vperm[v]] = r;
    }
    let mut half = vec![
        HalfEdge {
            vertex: 0,
            twin: 0,
            outgoing: false
        };
        nh
    ];
    for h in 0..nh {
        let e = w.half_edge(h);
        half[hperm[h]] = HalfEdge {
            vertex: vperm[e.vertex],
            twin: hperm[e.twin],
            outgoing: e.outgoing,
        };
    }
    Web::from_parts(w.bottom().to_vec(), w.top().to_vec(), kinds, rot, half).unwrap()
}
