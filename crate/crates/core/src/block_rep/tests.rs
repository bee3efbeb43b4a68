use super::*;
use crate::arith::rat;
use crate::sl2::decompose_span;

fn all_constructions() -> Vec<(u8, u32, Option<u32>)> {
    let mut out = Vec::new();
    for m in (1..=9).step_by(2) {
        for case in 1..=3 {
            out.push((case, m, None));
        }
    }
    for a in 0..=8 {
        out.push((4, 1, Some(a)));
        out.push((5, 1, Some(a)));
    }
    out.push((6, 3, None));
    out
}

fn row_i64(m: &RatMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect()
}

/// `Σ coeffs_i · family_i`, the matrix of `Σ a_i v_i` at a sample point.
fn at_point(family: &[RatMatrix], coeffs: &[i64]) -> RatMatrix {
    family
        .iter()
        .zip(coeffs)
        .fold(RatMatrix::zeros(family[0].rows(), family[0].cols()), |acc, (m, &c)| {
            &acc + &m.scale(&rat(c))
        })
}

#[test]
fn socle_sequence_basics() {
    assert!(SocleSequence::new(vec![]).is_err());
    let s = SocleSequence::of(&[1, 4, 2]);
    assert_eq!(s.offsets(), vec![0, 2, 7]);
    assert_eq!(s.total_dim(), 10);
    assert_eq!(s.reversed().weights(), vec![2, 4, 1]);
    assert_eq!(s.to_string(), "V(1),V(4),V(2)");
}

#[test]
fn construction_one_matches_display() {
    let rep = build_construction(1, 3, None).unwrap();
    // a = (1, 10, 100, 1000) separates the variables in every entry.
    let a = [1, 10, 100, 1000];
    let x = at_point(&rep.radical_family(0, 1), &a);
    assert_eq!(row_i64(&x), vec![vec![-1000, 300, -30, 1]]);
    let y = at_point(&rep.radical_family(1, 2), &a);
    assert_eq!(row_i64(&y.transpose()), vec![a.to_vec()]);
    assert_eq!(rep.corner_scalar(), Some(rat(2)));
}

#[test]
fn construction_two_matches_display() {
    let rep = build_construction(2, 3, None).unwrap();
    let a = [1, 10, 100, 1000];
    let x = at_point(&rep.radical_family(0, 1), &a);
    assert_eq!(
        row_i64(&x),
        vec![vec![-1000, 300, -30, 1, 0], vec![0, -1000, 300, -30, 1]]
    );
    let y = at_point(&rep.radical_family(1, 2), &a);
    assert_eq!(
        row_i64(&y.transpose()),
        vec![vec![4, 30, 200, 1000, 0], vec![0, 1, 20, 300, 4000]]
    );
    assert_eq!(rep.corner_scalar(), Some(rat(5)));
}

#[test]
fn construction_three_matches_display() {
    let rep = build_construction(3, 5, None).unwrap();
    let a = [1, 10, 100, 1000, 10_000, 100_000];
    let x = at_point(&rep.radical_family(0, 1), &a);
    assert_eq!(
        row_i64(&x),
        vec![
            vec![10_000, -4000, 600, -40, 1],
            vec![100_000, -40_000, 6000, -400, 10],
        ]
    );
    let y = at_point(&rep.radical_family(1, 2), &a);
    assert_eq!(
        row_i64(&y.transpose()),
        vec![vec![10, 100, 1000, 10_000, 100_000], vec![-1, -10, -100, -1000, -10_000]]
    );
    assert_eq!(rep.corner_scalar(), Some(rat(1)));
}

#[test]
fn construction_three_degenerates_to_a_trivial_middle() {
    let rep = build_construction(3, 1, None).unwrap();
    assert_eq!(rep.socle().weights(), vec![1, 0, 1]);
    assert!(verify_homomorphism(&rep).holds());
}

#[test]
fn step_constructions_use_scaled_identities() {
    let rep = build_construction(4, 1, Some(2)).unwrap();
    assert_eq!(rep.socle().weights(), vec![2, 3, 2]);
    assert_eq!(
        row_i64(&rep.block(BasisElement::V(0), 0, 1)),
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
    );
    assert_eq!(
        row_i64(&rep.block(BasisElement::V(1), 1, 2)),
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]
    );
    assert_eq!(rep.corner_scalar(), Some(rat(4)));

    let rep = build_construction(5, 1, Some(2)).unwrap();
    assert_eq!(rep.socle().weights(), vec![3, 2, 3]);
    assert_eq!(
        row_i64(&rep.block(BasisElement::V(0), 0, 1)),
        vec![vec![3, 0, 0], vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]
    );
    assert_eq!(rep.corner_scalar(), Some(rat(-3)));
}

#[test]
fn step_up_at_zero_shares_the_socle_of_case_one() {
    let step = build_construction(4, 1, Some(0)).unwrap();
    let trivial = build_construction(1, 1, None).unwrap();
    assert_eq!(step.socle(), trivial.socle());
    assert_eq!(step.corner_scalar(), Some(rat(2)));
    assert_eq!(trivial.corner_scalar(), Some(rat(2)));
}

#[test]
fn exceptional_construction() {
    let rep = build_construction(6, 3, None).unwrap();
    assert_eq!(rep.corner_scalar(), Some(rat(6)));
    let x0 = rep.block(BasisElement::V(0), 0, 1);
    assert_eq!(x0.shape(), (5, 4));
    assert_eq!(x0.rank(), 3);
    let nonzero: Vec<i64> = row_i64(&x0).concat().into_iter().filter(|&v| v != 0).collect();
    assert_eq!(nonzero, vec![6, 3, 1]);
}

#[test]
fn out_of_range_parameters_are_rejected() {
    assert!(build_construction(6, 5, None).is_err());
    assert!(build_construction(4, 3, Some(1)).is_err());
    assert!(build_construction(4, 1, None).is_err());
    assert!(build_construction(1, 3, Some(2)).is_err());
    assert!(build_construction(7, 3, None).is_err());
    let err = build_construction(1, 4, None).unwrap_err();
    assert!(err.to_string().contains("h_n requires odd m = 2n−1"));
}

#[test]
fn every_construction_is_faithful_and_uniserial() {
    for (case, m, a) in all_constructions() {
        let rep = build_construction(case, m, a).unwrap();
        let tag = format!("case {case}, m={m}, a={a:?}");
        assert!(rep.structural_problems().is_empty(), "{tag}");
        assert!(verify_funca(&rep).unwrap().holds(), "{tag}");
        let hom = verify_homomorphism(&rep);
        assert_eq!(hom.pairs_checked, rep.spec().dim().pow(2));
        assert!(hom.holds(), "{tag}: {:?}", hom.violations);
        assert!(is_uniserial(&rep), "{tag}");
        assert!(is_faithful(&rep), "{tag}");
        assert!(rep.corner_scalar().is_some(), "{tag}");
    }
}

#[test]
fn wrong_corner_scalar_breaks_funca() {
    let rep = build_construction(6, 3, None).unwrap();
    let broken = rep.with_z_block(0, 2, RatMatrix::scalar(5, rat(5))).unwrap();
    let report = verify_funca(&broken).unwrap();
    assert!(report.violations.contains(&(0, 3)));
    assert!(!verify_homomorphism(&broken).holds());
}

#[test]
fn negated_generator_breaks_homomorphism() {
    let rep = build_construction(4, 1, Some(3)).unwrap();
    let x1 = rep.block(BasisElement::V(1), 0, 1);
    let mats = rep.replace_block(BasisElement::V(1), 0, 1, -&x1);
    let broken = BlockRep::from_full_matrices(rep.spec(), rep.socle().clone(), mats).unwrap();
    assert!(!verify_funca(&broken).unwrap().holds());
    assert!(!verify_homomorphism(&broken).holds());
}

#[test]
fn funca_needs_length_three() {
    let spec = AlgebraSpec::new(1).unwrap();
    let rep = BlockRep::new(spec, SocleSequence::of(&[0]), vec![BlockMap::new(); 3]).unwrap();
    assert!(verify_funca(&rep).is_err());
}

#[test]
fn invalid_block_layouts_are_rejected() {
    let spec = AlgebraSpec::new(1).unwrap();
    let socle = SocleSequence::of(&[0, 1, 0]);
    let mut radical = vec![BlockMap::new(); 3];
    radical[0].insert((1, 0), RatMatrix::zeros(2, 1));
    assert!(BlockRep::new(spec, socle.clone(), radical).is_err());

    let mut radical = vec![BlockMap::new(); 3];
    radical[2].insert((0, 1), RatMatrix::from_i64(&[[1, 0]]));
    assert!(BlockRep::new(spec, socle.clone(), radical).is_err());

    let mut radical = vec![BlockMap::new(); 3];
    radical[0].insert((0, 1), RatMatrix::zeros(1, 3));
    assert!(BlockRep::new(spec, socle, radical).is_err());
}

#[test]
fn direct_sum_is_not_uniserial() {
    let spec = AlgebraSpec::new(2).unwrap();
    let rep = BlockRep::new(spec, SocleSequence::of(&[0, 3]), vec![BlockMap::new(); 5]).unwrap();
    assert!(verify_homomorphism(&rep).holds());
    assert!(!is_uniserial(&rep));
    assert!(!is_faithful(&rep));
}

#[test]
fn vanishing_superdiagonal_is_not_uniserial() {
    let rep = build_construction(1, 3, None).unwrap();
    let mut mats: Vec<RatMatrix> = rep.matrices().map(|(_, m)| m.clone()).collect();
    for i in 0..=3 {
        let b = BasisElement::V(i);
        let zero = RatMatrix::zeros(4, 1);
        mats[b.index(rep.spec())].set_block(1, 5, &zero);
    }
    let broken = BlockRep::from_full_matrices(rep.spec(), rep.socle().clone(), mats).unwrap();
    assert!(!is_uniserial(&broken));
    assert!(!verify_homomorphism(&broken).holds());
}

#[test]
fn central_kernel_is_not_faithful() {
    // sl(2) ⋉ V(3) acting on V(0), V(3): z acts by 0 and the rest is a
    // genuine representation.
    let spec = AlgebraSpec::new(2).unwrap();
    let (x, _, _) = Construction::TrivialEnds.families(3);
    let mut radical: Vec<BlockMap> = x.into_iter().map(|t| BlockMap::from([((0, 1), t)])).collect();
    radical.push(BlockMap::new());
    let rep = BlockRep::new(spec, SocleSequence::of(&[0, 3]), radical).unwrap();
    assert!(verify_homomorphism(&rep).holds());
    assert!(is_uniserial(&rep));
    assert!(!is_faithful(&rep));

    let zero = BlockRep::new(AlgebraSpec::new(1).unwrap(), SocleSequence::of(&[0]), vec![BlockMap::new(); 3]).unwrap();
    assert!(!is_faithful(&zero));
}

#[test]
fn dual_reverses_socle_and_preserves_checks() {
    for (case, m, a) in all_constructions() {
        let rep = build_construction(case, m, a).unwrap();
        let d = dual(&rep);
        assert_eq!(d.socle(), &rep.socle().reversed());
        assert!(d.structural_problems().is_empty());
        assert!(verify_homomorphism(&d).holds(), "case {case} m={m} a={a:?}");
        assert_eq!(is_uniserial(&d), is_uniserial(&rep));
        assert!(is_faithful(&d));
    }
}

#[test]
fn double_dual_is_a_sign_twist() {
    let spec = AlgebraSpec::new(2).unwrap();
    let (x, _, _) = Construction::TrivialEnds.families(3);
    let mut radical: Vec<BlockMap> = x.into_iter().map(|t| BlockMap::from([((0, 1), t)])).collect();
    radical.push(BlockMap::new());
    let rep = BlockRep::new(spec, SocleSequence::of(&[0, 3]), radical).unwrap();
    let twice = dual(&dual(&rep));
    assert_eq!(twice, conjugate_by_block_scalars(&rep, &parity_signs(&rep)).unwrap());
    assert_ne!(twice, rep);

    for (case, m, a) in all_constructions() {
        let rep = build_construction(case, m, a).unwrap();
        let twice = dual(&dual(&rep));
        assert_eq!(twice, conjugate_by_block_scalars(&rep, &parity_signs(&rep)).unwrap());
    }
}

/// `(−1)^{a_t}` per block: the double dual differs from the original by this
/// block-diagonal change of basis.
fn parity_signs(rep: &BlockRep) -> Vec<Rational> {
    rep.socle()
        .weights()
        .iter()
        .map(|&a| if a % 2 == 0 { rat(1) } else { rat(-1) })
        .collect()
}

#[test]
fn intro_example_is_the_exceptional_construction() {
    let intro = assemble_intro_example();
    let exceptional = build_construction(6, 3, None).unwrap();
    assert_eq!(intro.block(BasisElement::V(0), 0, 1), exceptional.block(BasisElement::V(0), 0, 1));
    assert_eq!(intro.block(BasisElement::V(0), 1, 2), exceptional.block(BasisElement::V(0), 1, 2));
    assert_eq!(intro, exceptional);
    assert!(verify_homomorphism(&intro).holds());
    assert!(is_faithful(&intro));
    assert!(is_uniserial(&intro));
}

#[test]
fn intro_example_commutators_span_only_the_trivial_module() {
    let intro = assemble_intro_example();
    let x = intro.radical_family(0, 1);
    let y = intro.radical_family(1, 2);
    let mut commutators = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            commutators.push(&(&x[i] * &y[j]) - &(&x[j] * &y[i]));
        }
    }
    assert_eq!(
        decompose_span(&commutators, IrrepLabel(4), IrrepLabel(4)),
        vec![IrrepLabel(0)]
    );
}

#[test]
fn image_is_linear_in_the_element() {
    let rep = build_construction(2, 3, None).unwrap();
    let spec = rep.spec();
    let coeffs: Vec<Rational> = (0..spec.dim() as i64).map(rat).collect();
    let x = GalileiElement::from_coeffs(spec, coeffs.clone()).unwrap();
    let expected = spec
        .basis()
        .into_iter()
        .zip(&coeffs)
        .fold(RatMatrix::zeros(rep.dim(), rep.dim()), |acc, (b, c)| &acc + &rep.matrix(b).scale(c));
    assert_eq!(rep.image(&x), expected);
}
