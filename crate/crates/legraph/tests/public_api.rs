use std::collections::BTreeMap;

use legraph::{
    bypass_rewrite, canonical_config, decide_isotopy, flip_ribbon_orientation, legal_moves,
    ribbon_equal, ribbon_invariant, rot_vector, validate_config, EdgeId, End, Graph,
    IsotopyVerdict, Matching, Presentation, Result, RibbonMode, RotationSystem, Side, Sign, Twist,
    VertexId,
};
use proptest::prelude::*;

fn theta(signs: [Sign; 2], halves: [i64; 3]) -> Result<Presentation> {
    let g = Graph::new(
        [VertexId(0), VertexId(1)],
        (0..3).map(|i| (EdgeId(i), VertexId(0), VertexId(1))),
    )?;
    let end = |e: u32, x: u8| End::new(EdgeId(e), x);
    let rot = RotationSystem::new(BTreeMap::from([
        (VertexId(0), vec![end(0, 0), end(1, 0), end(2, 0)]),
        (VertexId(1), vec![end(0, 1), end(2, 1), end(1, 1)]),
    ]));
    Presentation::new(
        g,
        rot,
        BTreeMap::from([(VertexId(0), signs[0]), (VertexId(1), signs[1])]),
        (0..3)
            .map(|i| (EdgeId(i), Twist(halves[i as usize])))
            .collect(),
    )
}

fn theta_strategy() -> impl Strategy<Value = Presentation> {
    (any::<bool>(), any::<bool>(), [1i64..4, 1..4, 1..4]).prop_map(|(a, b, w)| {
        let s = |x: bool| if x { Sign::Plus } else { Sign::Minus };
        let odd = a != b;
        let halves = w.map(|k| if odd { -2 * k + 1 } else { -2 * k });
        theta([s(a), s(b)], halves).unwrap()
    })
}

proptest! {
    #[test]
    fn rewrites_keep_rot(n in 2usize..6, pick in any::<prop::sample::Index>(), i in 0usize..12) {
        let all = Matching::all(n);
        let m = pick.get(&all);
        for side in [Side::Front, Side::Behind] {
            if let Some(r) = m.rewrite(i % m.len(), side) {
                prop_assert_eq!(r.rot(Sign::Plus), m.rot(Sign::Plus));
            }
        }
    }

    #[test]
    fn flip_is_an_involution(p in theta_strategy()) {
        let r = ribbon_invariant(&p);
        prop_assert_eq!(flip_ribbon_orientation(&flip_ribbon_orientation(&r)), r.clone());
        prop_assert!(ribbon_equal(&r, &ribbon_invariant(&p.reoriented()), RibbonMode::Oriented).unwrap());
    }

    #[test]
    fn bypasses_keep_the_configuration_valid(p in theta_strategy(), steps in 0usize..6) {
        let mut d = canonical_config(&p).unwrap();
        for k in 0..steps {
            let moves = legal_moves(&p, &d).unwrap();
            if moves.is_empty() {
                break;
            }
            let (a, s) = moves[k % moves.len()];
            d = bypass_rewrite(&p, &d, a, s).unwrap();
            prop_assert!(validate_config(&p, &d).is_empty());
        }
        let rot = rot_vector(&p, &d).unwrap();
        for (c, r) in p.cycles().iter().zip(rot) {
            prop_assert!(p.tb(c) + r.abs() <= -1);
        }
    }
}

#[test]
fn isotopy_after_reorientation() {
    let p = theta([Sign::Plus, Sign::Minus], [-1, -3, -3]).unwrap();
    let d = canonical_config(&p).unwrap();
    let v = decide_isotopy(&p, &d, &p.reoriented(), &d.reoriented()).unwrap();
    assert!(matches!(v, IsotopyVerdict::Isotopic { witness: Some(_) }));
}
