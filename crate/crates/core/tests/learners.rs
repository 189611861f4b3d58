#![allow(clippy::needless_range_loop)]

use improvelearn::geometry::vector::{angle, dot};
use improvelearn::learners::{
    closure_learn, consistent_direction, improvement_region_mass, learn_halfspace_shifted, learn_singleton_positive,
    learn_threshold_conservative, pos_agreement_certificate, pos_agreement_member, ClosureOperator, FiniteClass,
    PosCertificate, PERCEPTRON_UPDATE_CAP,
};
use improvelearn::model::{
    improvement_loss, population_loss_exact, population_loss_mc, sample_sphere, InstanceSpace, LossKind,
};
use improvelearn::rng::trial_rng;
use improvelearn::{DistributionSpec, Error, Hypothesis, ImprovementMap, LabeledExample, Point};
use rand::Rng;

fn ex(x: f64, y: bool) -> LabeledExample {
    LabeledExample::new(Point::scalar(x), y)
}

#[test]
fn threshold_examples() {
    let s = vec![ex(0.6, true), ex(0.72, true), ex(0.1, false)];
    assert_eq!(learn_threshold_conservative(&s).unwrap(), Hypothesis::threshold(0.6));
    let s = vec![ex(0.3, false), ex(0.9, false)];
    assert_eq!(learn_threshold_conservative(&s).unwrap(), Hypothesis::threshold(1.0));
    assert_eq!(learn_threshold_conservative::<f64>(&[]).unwrap(), Hypothesis::threshold(1.0));
    let s = vec![ex(0.501, true)];
    let Hypothesis::Threshold { t } = learn_threshold_conservative(&s).unwrap() else { panic!() };
    assert!(t >= 0.5);
    let bad = vec![ex(0.4, true), ex(0.6, false)];
    assert!(matches!(learn_threshold_conservative(&bad), Err(Error::InconsistentSample(_))));
}

#[test]
fn threshold_is_conservative_and_matches_closure() {
    let mut rng = trial_rng(5, 0);
    for _ in 0..1000 {
        let ts: f64 = rng.random();
        let m = rng.random_range(0..30);
        let s: Vec<LabeledExample> = (0..m)
            .map(|_| {
                let x: f64 = rng.random();
                ex(x, x >= ts)
            })
            .collect();
        let h = learn_threshold_conservative(&s).unwrap();
        let Hypothesis::Threshold { t } = h else { panic!() };
        assert!(t >= ts);
        assert_eq!(closure_learn(&s, &ClosureOperator::Thresholds).unwrap(), h);
    }
}

#[test]
fn rectangle_closure_is_bounding_box() {
    let s = vec![
        LabeledExample::new(Point::from_vec(vec![0.2, 0.3]), true),
        LabeledExample::new(Point::from_vec(vec![0.5, 0.7]), true),
        LabeledExample::new(Point::from_vec(vec![0.9, 0.9]), false),
    ];
    let h = closure_learn(&s, &ClosureOperator::Rectangles).unwrap();
    assert_eq!(h, Hypothesis::Rectangle { a: vec![0.2, 0.3], b: vec![0.5, 0.7] });
    let none: Vec<LabeledExample> = vec![LabeledExample::new(Point::from_vec(vec![0.1, 0.1]), false)];
    assert_eq!(closure_learn(&none, &ClosureOperator::Rectangles).unwrap(), Hypothesis::ConstantZero);
    let mut bad = s.clone();
    bad.push(LabeledExample::new(Point::from_vec(vec![0.3, 0.5]), false));
    assert!(matches!(closure_learn(&bad, &ClosureOperator::Rectangles), Err(Error::InconsistentSample(_))));
    // a single positive gives a degenerate box
    let one = vec![LabeledExample::new(Point::from_vec(vec![0.4, 0.4]), true)];
    assert_eq!(
        closure_learn(&one, &ClosureOperator::Rectangles).unwrap(),
        Hypothesis::Rectangle { a: vec![0.4, 0.4], b: vec![0.4, 0.4] }
    );
}

#[test]
fn two_point_class_is_identified_by_one_label() {
    assert!(FiniteClass::intersection_closed(2, vec![0b01, 0b10]).is_err());
    let class = FiniteClass::unrestricted(2, vec![0b01, 0b10]).unwrap();
    let op = ClosureOperator::FiniteClass(class);
    let h1 = Hypothesis::FiniteLabeling(vec![true, false]);
    let h2 = Hypothesis::FiniteLabeling(vec![false, true]);
    let s = |id: usize, y: bool| vec![LabeledExample::new(Point::from_id(id), y)];
    assert_eq!(closure_learn(&s(0, true), &op).unwrap(), h1);
    assert_eq!(closure_learn(&s(1, false), &op).unwrap(), h1);
    assert_eq!(closure_learn(&s(1, true), &op).unwrap(), h2);
    assert_eq!(closure_learn(&s(0, false), &op).unwrap(), h2);
}

/// Random intersection-closed class: close a few random sets under `&`.
fn random_closed_class(rng: &mut impl Rng, n: usize) -> FiniteClass {
    let full = (1u64 << n) - 1;
    let mut members: Vec<u64> = (0..rng.random_range(1..6)).map(|_| rng.random::<u64>() & full).collect();
    members.sort_unstable();
    members.dedup();
    loop {
        let mut grown = members.clone();
        for &a in &members {
            for &b in &members {
                grown.push(a & b);
            }
        }
        grown.sort_unstable();
        grown.dedup();
        if grown.len() == members.len() {
            break;
        }
        members = grown;
    }
    FiniteClass::intersection_closed(n, members).unwrap()
}

#[test]
fn closure_ignores_negatives_and_grows_with_positives() {
    let mut rng = trial_rng(8, 0);
    for _ in 0..500 {
        let n = rng.random_range(1..=10);
        let class = random_closed_class(&mut rng, n);
        let target = class.members()[rng.random_range(0..class.members().len())];
        let op = ClosureOperator::FiniteClass(class);
        let label = |i: usize| target >> i & 1 == 1;
        let sample: Vec<LabeledExample> = (0..rng.random_range(0..8))
            .map(|_| {
                let i = rng.random_range(0..n);
                LabeledExample::new(Point::from_id(i), label(i))
            })
            .collect();
        let h = closure_learn(&sample, &op).unwrap();
        let Hypothesis::FiniteLabeling(hl) = &h else { panic!() };
        // conservative
        for (i, &b) in hl.iter().enumerate() {
            assert!(!b || label(i));
        }
        let i = rng.random_range(0..n);
        let mut more = sample.clone();
        more.push(LabeledExample::new(Point::from_id(i), label(i)));
        let h2 = closure_learn(&more, &op).unwrap();
        let Hypothesis::FiniteLabeling(h2l) = &h2 else { panic!() };
        if label(i) {
            assert!(hl.iter().zip(h2l).all(|(&a, &b)| !a || b));
        } else {
            assert_eq!(hl, h2l);
        }
    }
}

#[test]
fn closure_loss_never_exceeds_standard_loss() {
    let mut rng = trial_rng(9, 0);
    for _ in 0..1000 {
        let n = rng.random_range(1..=10);
        let class = random_closed_class(&mut rng, n);
        let target = class.members()[rng.random_range(0..class.members().len())];
        let f = Hypothesis::FiniteLabeling((0..n).map(|i| target >> i & 1 == 1).collect());
        let op = ClosureOperator::FiniteClass(class);
        let sample: Vec<LabeledExample> = (0..rng.random_range(0..6))
            .map(|_| LabeledExample::labeled_by(Point::from_id(rng.random_range(0..n)), &f))
            .collect();
        let h = closure_learn(&sample, &op).unwrap();
        let table: Vec<Vec<usize>> =
            (0..n).map(|_| (0..rng.random_range(0..=n)).map(|_| rng.random_range(0..n)).collect()).collect();
        let delta = ImprovementMap::FiniteTable(table);
        for i in 0..n {
            let x = Point::from_id(i);
            let imp = improvement_loss(&x, &h, &f, &delta).unwrap().loss_bit;
            let std = h.predict(&x) != f.predict(&x);
            assert!(!imp || std);
        }
    }
}

#[test]
fn improvement_region_examples() {
    let h = Hypothesis::rectangle(vec![0.3, 0.3], vec![0.6, 0.7]).unwrap();
    let f = Hypothesis::rectangle(vec![0.1, 0.1], vec![0.9, 0.9]).unwrap();
    let dist = DistributionSpec::UniformBox { d: 2 };
    let rep = improvement_region_mass(&h, &f, &ImprovementMap::LinfBall { r: 0.1 }, &dist, 40_000, 3).unwrap();
    let cf = rep.closed_form.unwrap();
    assert!((cf - 0.18).abs() < 1e-12);
    assert!((rep.mass - cf).abs() <= 4.0 * rep.mc_stderr, "{rep:?}");

    let h = Hypothesis::threshold(0.6);
    let f = Hypothesis::threshold(0.4);
    let dist = DistributionSpec::unit_interval();
    let rep = improvement_region_mass(&h, &f, &ImprovementMap::interval_ball(0.05), &dist, 40_000, 4).unwrap();
    assert!((rep.closed_form.unwrap() - 0.05).abs() < 1e-12);
    assert!((rep.mass - 0.05).abs() <= 4.0 * rep.mc_stderr);

    let rep = improvement_region_mass(&h, &f, &ImprovementMap::interval_ball(0.0), &dist, 5000, 4).unwrap();
    assert_eq!(rep.mass, 0.0);
    assert_eq!(rep.closed_form, Some(0.0));
}

#[test]
fn singleton_learner() {
    let s = vec![ex(0.1, false), ex(0.4, true), ex(0.8, true)];
    assert_eq!(learn_singleton_positive(&s), Hypothesis::SingletonPositive(Point::scalar(0.4)));
    assert_eq!(learn_singleton_positive(&[ex(0.1, false)]), Hypothesis::ConstantZero);

    let pts: Vec<Point> = (0..8).map(Point::from_id).collect();
    let f = Hypothesis::positive_on(8, [2, 5]);
    let delta = ImprovementMap::WholeSpace(InstanceSpace::Finite(pts.clone()));
    let dist = DistributionSpec::uniform_over(pts).unwrap();
    let s = vec![LabeledExample::labeled_by(Point::from_id(1), &f), LabeledExample::labeled_by(Point::from_id(5), &f)];
    let h = learn_singleton_positive(&s);
    assert_eq!(population_loss_exact(&h, &f, &delta, &dist, LossKind::Improvement).unwrap(), 0.0);
}

fn sphere_sample(rng: &mut impl Rng, m: usize, w_star: &[f64]) -> Vec<LabeledExample> {
    (0..m)
        .map(|_| {
            let x: Vec<f64> = sample_sphere(rng, w_star.len());
            let y = dot(&x, w_star) >= 0.0;
            LabeledExample::new(Point::from_vec(x), y)
        })
        .collect()
}

#[test]
fn shifted_halfspace_is_close_to_target() {
    let w_star = [0.0, 0.0, 1.0];
    let r = 0.3;
    let m = (20.0 * (3.0 + 10f64.ln()) / r).ceil() as usize;
    let mut good = 0;
    for trial in 0..50 {
        let mut rng = trial_rng(21, trial);
        let s = sphere_sample(&mut rng, m, &w_star);
        let fit = consistent_direction(&s, PERCEPTRON_UPDATE_CAP).unwrap();
        for e in &s {
            assert_eq!(dot(&fit.w, &e.point.coords) > 0.0, e.label);
        }
        if angle(&fit.w, &w_star) <= r / 2.0 {
            good += 1;
        }
    }
    assert!(good >= 45, "{good}/50");
}

#[test]
fn shifted_halfspace_has_zero_loss_when_aligned() {
    let w_star = [0.0, 0.0, 1.0];
    let r = 0.3;
    let mut rng = trial_rng(22, 0);
    let s = sphere_sample(&mut rng, 400, &w_star);
    let h = learn_halfspace_shifted(&s, r).unwrap();
    let Hypothesis::AffineHalfspace { w, bias } = &h else { panic!() };
    assert!((bias - (r / 2.0).sin()).abs() < 1e-15);
    assert!(angle(w, &w_star) <= r / 2.0);
    let f = Hypothesis::homogeneous(&w_star).unwrap();
    let dist = DistributionSpec::UniformSphere { d: 3 };
    let e = population_loss_mc(&h, &f, &ImprovementMap::AngularBall { r }, &dist, 10_000, LossKind::Improvement, 1)
        .unwrap();
    assert_eq!(e.mean, 0.0);
    // containment in the homogeneous halfspace, and within reach of the target's positives
    let hom = Hypothesis::HomogeneousHalfspace { w: w.clone() };
    for _ in 0..10_000 {
        let x = Point::from_vec(sample_sphere(&mut rng, 3));
        if h.predict(&x) {
            assert!(hom.predict(&x) && f.predict(&x));
        }
    }
}

#[test]
fn single_positive_point() {
    let p = Point::from_vec(vec![0.6, 0.0, 0.8]);
    let s = vec![LabeledExample::new(p.clone(), true)];
    let h = learn_halfspace_shifted(&s, 0.2).unwrap();
    let Hypothesis::AffineHalfspace { w, .. } = &h else { panic!() };
    assert!(dot(w, &p.coords) > 0.0);
    // the shifted region excludes the equator band of w
    let mut eq = vec![w[1], -w[0], 0.0];
    let n = dot(&eq, &eq).sqrt();
    eq.iter_mut().for_each(|v| *v /= n);
    assert!(!h.predict(&Point::from_vec(eq)));
    assert!(learn_halfspace_shifted(&s, 2.0).is_err());
}

#[test]
fn non_separable_sample_reports_violations() {
    let p = Point::from_vec(vec![1.0, 0.0]);
    let s = vec![LabeledExample::new(p.clone(), true), LabeledExample::new(p, false)];
    match consistent_direction(&s, 1000) {
        Err(Error::NonSeparable { updates, violations }) => {
            assert_eq!(updates, 1000);
            assert!(violations >= 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn agreement_region_trivial_probes() {
    let mut rng = trial_rng(30, 0);
    let s = sphere_sample(&mut rng, 40, &[0.3, 0.0, 0.9539392014169456]);
    let pos = s.iter().find(|e| e.label).unwrap().point.clone();
    assert!(pos_agreement_member(&pos, &s).unwrap());
    let anti = Point::from_vec(pos.coords.iter().map(|v| -v).collect());
    assert!(!pos_agreement_member(&anti, &s).unwrap());
}

#[test]
fn agreement_region_matches_brute_force() {
    let w_star = [0.0, 0.6, 0.8];
    let mut rng = trial_rng(31, 0);
    let s = sphere_sample(&mut rng, 50, &w_star);
    let w0 = consistent_direction(&s, PERCEPTRON_UPDATE_CAP).unwrap().w;
    let consistent = |w: &[f64]| s.iter().all(|e| (dot(w, &e.point.coords) > 0.0) == e.label);
    // reject-sample consistent directions from a cap around w0
    let mut dirs = Vec::new();
    while dirs.len() < 100_000 {
        let u: Vec<f64> = sample_sphere(&mut rng, 3);
        let t: f64 = rng.random_range(0.0..0.6);
        let w: Vec<f64> = w0.iter().zip(&u).map(|(a, b)| a + t * b).collect();
        if consistent(&w) {
            dirs.push(w);
        }
    }
    let mut conclusive = 0;
    for _ in 0..200 {
        let x = Point::from_vec(sample_sphere(&mut rng, 3));
        let cert = pos_agreement_certificate(&x, &s).unwrap();
        match &cert {
            PosCertificate::Member { lambda } => {
                assert!(lambda.iter().all(|&l| l >= 0.0));
                let mut y = [0.0; 3];
                for (e, &l) in s.iter().zip(lambda) {
                    let sg = if e.label { 1.0 } else { -1.0 };
                    for k in 0..3 {
                        y[k] += l * sg * e.point.coords[k];
                    }
                }
                let err: f64 = y.iter().zip(&x.coords).map(|(a, b)| (a - b).abs()).sum();
                assert!(err < 1e-8);
            }
            PosCertificate::Separated { w } => {
                assert!(consistent(w));
                assert!(dot(w, &x.coords) < 0.0);
            }
        }
        let brute_negative = dirs.iter().any(|w| dot(w, &x.coords) < 0.0);
        if brute_negative {
            conclusive += 1;
            assert!(matches!(cert, PosCertificate::Separated { .. }));
        }
    }
    assert!(conclusive > 0);
}
