use extube::cells::interior_cell_formula;
use extube::direction::Direction;
use extube::extend::{convex_tube_extension, verify_extension, ConeBase, ConeShape};
use extube::geometry::{lorentz_scale, minkowski_square, to_diffs, DiffConfig, LightConeVector, PointConfig};
use extube::json::to_canonical_string;
use extube::oracle::{oracle_extended_membership, OracleConfig};
use extube::permutation::{is_union_member, union_membership, Permutation, UnionMode, DEFAULT_MAX_M};
use extube::scalar::{parse_canonical_rational, rat, rational_to_string, GaussianRational, Rational};
use extube::tube::{direction_as_lambda, in_extended_tube, in_forward_tube, maps_into_forward_tube};
use extube::uniformity::{pairwise_cut_hits, projection_inclusion_check};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("nonzero", |z| !z.is_zero())
}

fn vector() -> impl Strategy<Value = LightConeVector> {
    (gaussian(), gaussian()).prop_map(|(u, v)| LightConeVector::new(u, v))
}

fn diffs(max: usize) -> impl Strategy<Value = DiffConfig> {
    prop::collection::vec(vector(), 1..=max).prop_map(DiffConfig::new)
}

fn points(min: usize, max: usize) -> impl Strategy<Value = PointConfig> {
    prop::collection::vec(vector(), min..=max).prop_map(PointConfig::new)
}

fn forward_points(m: usize) -> impl Strategy<Value = PointConfig> {
    fn upper() -> impl Strategy<Value = GaussianRational> {
        (rational(), 1i64..=5, 1i64..=3).prop_map(|(re, n, d)| GaussianRational::new(re, rat(n, d)))
    }
    prop::collection::vec((upper(), upper()), m - 1).prop_map(|v| {
        PointConfig::from_diffs(&DiffConfig::new(
            v.into_iter().map(|(u, v)| LightConeVector::new(u, v)).collect(),
        ))
    })
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lorentz_invariance(cfg in diffs(4), lambda in nonzero_gaussian()) {
        let moved = lorentz_scale(&cfg, &lambda).unwrap();
        prop_assert_eq!(in_extended_tube(&cfg).unwrap().is_member(), in_extended_tube(&moved).unwrap().is_member());
        for (a, b) in cfg.diffs.iter().zip(&moved.diffs) {
            prop_assert_eq!(minkowski_square(a), minkowski_square(b));
        }
    }

    #[test]
    fn witness_is_modulus_free(cfg in diffs(4), n in 1i64..50, d in 1i64..50) {
        let cert = in_extended_tube(&cfg).unwrap();
        prop_assert!(cert.verify(&cfg).is_ok());
        if let Some(w) = &cert.witness {
            prop_assert!(maps_into_forward_tube(&cfg, &direction_as_lambda(w, &rat(n, d))));
        }
    }

    #[test]
    fn forward_implies_extended(cfg in diffs(4)) {
        if in_forward_tube(&cfg).unwrap().is_member() {
            prop_assert!(in_extended_tube(&cfg).unwrap().is_member());
        }
    }

    #[test]
    fn formula_matches_engine(cfg in diffs(3)) {
        let f = interior_cell_formula(cfg.len() + 1).unwrap();
        prop_assert_eq!(f.satisfied_by(&cfg).unwrap(), in_extended_tube(&cfg).unwrap().is_member());
    }

    #[test]
    fn oracle_is_one_sided_and_monotone(cfg in diffs(3)) {
        let exact = in_extended_tube(&cfg).unwrap().is_member();
        let coarse = oracle_extended_membership(&cfg, &OracleConfig { theta_steps: 16, modulus_samples: 2 });
        let fine = oracle_extended_membership(&cfg, &OracleConfig { theta_steps: 300, modulus_samples: 2 });
        prop_assert!(!coarse.is_member() || exact);
        prop_assert!(!fine.is_member() || exact);
        prop_assert!(!coarse.is_member() || fine.is_member());
    }

    #[test]
    fn relabeling_invariance((cfg, sigma) in (2usize..=4).prop_flat_map(|m| (points(m, m), permutation(m)))) {
        let a = is_union_member(&cfg).unwrap();
        let b = is_union_member(&sigma.apply(&cfg).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn primitive_implies_union(cfg in points(2, 4)) {
        if in_extended_tube(&to_diffs(&cfg).unwrap()).unwrap().is_member() {
            let v = union_membership(&cfg, UnionMode::First, DEFAULT_MAX_M).unwrap();
            prop_assert!(v.is_member());
            prop_assert!(v.verify(&cfg));
        }
    }

    #[test]
    fn union_certificates_complete(cfg in points(2, 4)) {
        let v = union_membership(&cfg, UnionMode::All, DEFAULT_MAX_M).unwrap();
        prop_assert!(v.verify(&cfg));
        if !v.is_member() {
            prop_assert_eq!(v.per_permutation_certificates.len(), (1..=cfg.m()).product::<usize>());
        }
    }

    #[test]
    fn members_avoid_pairwise_cuts(cfg in points(2, 4)) {
        if is_union_member(&cfg).unwrap() {
            prop_assert!(pairwise_cut_hits(&cfg).is_empty());
        }
    }

    #[test]
    fn projection_of_forward_configs(cfg in (3usize..=5).prop_flat_map(forward_points), r in 1usize..4) {
        prop_assume!(r + 1 < cfg.m());
        prop_assert!(projection_inclusion_check(&cfg, r).unwrap().passed());
    }

    #[test]
    fn extension_contains_union((cfg, perms) in (2usize..=3).prop_flat_map(|m| {
        (points(m, m), prop::collection::vec(permutation(m), 1..=3))
    })) {
        let m = cfg.m();
        let ext = convex_tube_extension(&vec![ConeBase::forward_quadrant(); m - 1], &perms).unwrap();
        let member = perms.iter().any(|s| {
            in_extended_tube(&to_diffs(&s.apply(&cfg).unwrap()).unwrap()).unwrap().is_member()
        });
        let cert = verify_extension(&cfg, &ext).unwrap();
        prop_assert!(cert.verify(&cfg, &ext));
        if member {
            prop_assert!(cert.member);
        }
        if m == 2 && cert.member && ext.cut_back() {
            prop_assert!(!minkowski_square(&to_diffs(&cfg).unwrap().diffs[0]).on_nonnegative_real_axis());
        }
    }

    #[test]
    fn hull_idempotence(
        gens in prop::collection::vec(prop::collection::vec((-3i64..=3, -3i64..=3), 2..=4), 1..=3),
        pick in prop::collection::vec(any::<prop::sample::Index>(), 0..=3),
    ) {
        let bases: Vec<ConeBase> = gens
            .iter()
            .filter_map(|g| {
                let dirs: Vec<Direction> = g.iter().filter_map(|&(x, y)| Direction::from_i64(x, y)).collect();
                ConeShape::hull_of(&dirs).map(ConeBase::from_shape)
            })
            .collect();
        prop_assume!(!bases.is_empty());
        let m = bases.len() + 1;
        let all: Vec<Permutation> = Permutation::all(m).collect();
        let perms: Vec<Permutation> = pick.iter().map(|i| i.get(&all).clone()).collect();
        let once = convex_tube_extension(&bases, &perms).unwrap();
        let twice = convex_tube_extension(&once.bases, &perms).unwrap();
        prop_assert_eq!(&once.bases, &twice.bases);
        for (b, e) in bases.iter().zip(&once.bases) {
            for g in b.shape.generators() {
                // inputs stay inside their hull (as closed cones)
                prop_assert!(e.shape.contains_direction(&g) || e.shape.boundary_rays().contains(&g));
            }
        }
    }

    #[test]
    fn canonical_rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        let s = rational_to_string(&r);
        prop_assert_eq!(parse_canonical_rational(&s).unwrap(), r);
    }

    #[test]
    fn permutation_group_laws(a in permutation(5), b in permutation(5), c in permutation(5)) {
        let id = Permutation::identity(5);
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert_eq!(
            a.compose(&b).unwrap().compose(&c).unwrap(),
            a.compose(&b.compose(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn config_json_round_trip(cfg in points(1, 4)) {
        let text = to_canonical_string(&extube::cli::ParsedConfig::Points(cfg.points.clone()));
        let back = extube::cli::parse_config_str(&text).unwrap();
        prop_assert_eq!(to_canonical_string(&back), text);
    }
}
