mod common;

use num_rational::BigRational;
use sl3blocks::combinatorics::Signature;
use sl3blocks::dimer::limit_probability;
use sl3blocks::webs::matrix_m;

use common::CLOSED_FORMS;

#[test]
fn every_closed_form_is_reproduced() {
    assert_eq!(CLOSED_FORMS.len(), 13);
    for f in CLOSED_FORMS {
        assert!(
            f.matches_library(),
            "{:?} T{} λ{}",
            f.signature,
            f.tableau,
            f.lambda
        );
    }
}

#[test]
fn closed_forms_sum_to_one_for_each_signature() {
    let x: Vec<BigRational> = [0, 1, 3, 4, 7, 9]
        .iter()
        .map(|&v| BigRational::from_integer(v.into()))
        .collect();
    for sig in [&[1u8, 1, 2, 2][..], &[1; 6], &[1, 2, 1, 2, 1, 2]] {
        let s = Signature::new(sig).unwrap();
        let basis = matrix_m(&s).unwrap();
        let forms: Vec<_> = CLOSED_FORMS.iter().filter(|f| f.signature == sig).collect();
        assert_eq!(forms.len(), basis.size());
        let t = forms[0].tableau;
        let total: BigRational = (1..=basis.size())
            .map(|l| limit_probability(&basis, l, t, &x[..s.d()]).unwrap())
            .sum();
        assert_eq!(total, BigRational::from_integer(1.into()));
    }
}

#[test]
fn a_perturbed_closed_form_is_rejected() {
    let f = &CLOSED_FORMS[0];
    let wrong = common::ClosedForm { coefficient: 2, ..*f };
    assert!(!wrong.matches_library());
}
