use proptest::prelude::*;

use scancover::format::{instance_hash, instance_to_json, parse_instance, schedule_to_json, ScheduleFile};
use scancover_core::generators::{gen_random, RandomKind};
use scancover_core::tree::arboricity_approx;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn instances_and_schedules_survive_a_round_trip(
        kind in prop::sample::select(RandomKind::ALL.to_vec()),
        n in 1usize..12,
        seed: u64,
        as_abstract: bool,
    ) {
        let mut inst = gen_random(kind, n, seed).unwrap().instance;
        if as_abstract {
            inst = inst.to_abstract();
        }
        let back = parse_instance(&instance_to_json(&inst)).unwrap();
        prop_assert_eq!(instance_hash(&inst), instance_hash(&back));
        prop_assert_eq!(back.edge_count(), inst.edge_count());
        for (a, b, c) in inst.incident_pairs() {
            prop_assert_eq!(back.cost(a, b), c);
        }

        let s = arboricity_approx(&inst).unwrap();
        let file = ScheduleFile::new(&inst, &s, None, None);
        let parsed: ScheduleFile = serde_json::from_str(&schedule_to_json(&file)).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.resolve(&back).unwrap().schedule, s);
    }
}
