use std::collections::{BTreeSet, HashSet};

use bidirected_menger::cli::gen::random_trial;
use bidirected_menger::oracle::{self, OracleBounds};
use bidirected_menger::reduce::{attach_terminals, normalize_terminals, split_and_close};
use bidirected_menger::walks::{check_walk, classify_link, enumerate_st_links, enumerate_xy_links, LinkVerdict};
use bidirected_menger::{parse_instance, serialize_instance, solve_menger, InstanceFile, Link, VertexId};
use proptest::prelude::*;

fn instance(max_vertices: usize, max_edges: usize, max_set: usize) -> impl Strategy<Value = InstanceFile> {
    any::<u64>().prop_map(move |seed| random_trial(seed, max_vertices, max_edges, max_set))
}

fn wide() -> OracleBounds {
    OracleBounds {
        max_vertices: 16,
        max_edges: 32,
    }
}

fn pick(inst: &InstanceFile, i: usize) -> VertexId {
    let vs = inst.graph.vertices();
    vs[i % vs.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversed_walks_stay_valid(inst in instance(6, 10, 2)) {
        for link in enumerate_xy_links(&inst.graph, &inst.x, &inst.y) {
            for part in link.parts() {
                let r = part.reversed();
                prop_assert!(check_walk(&inst.graph, &r).is_valid());
                prop_assert_eq!(&r.reversed(), part);
                prop_assert_eq!(r.vertex_set(), part.vertex_set());
            }
        }
    }

    #[test]
    fn switching_keeps_links(inst in instance(6, 10, 2), i in any::<usize>()) {
        let v = pick(&inst, i);
        let h = inst.graph.switch_vertex(&v).unwrap();
        prop_assert_eq!(h.switch_vertex(&v).unwrap(), inst.graph.clone());
        let before: HashSet<Link> = enumerate_xy_links(&inst.graph, &inst.x, &inst.y).into_iter().collect();
        let after: HashSet<Link> = enumerate_xy_links(&h, &inst.x, &inst.y).into_iter().collect();
        prop_assert_eq!(before, after);
        let a = solve_menger(&inst.graph, &inst.x, &inst.y).unwrap();
        let b = solve_menger(&h, &inst.x, &inst.y).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.separator.len(), b.separator.len());
    }

    #[test]
    fn instance_text_round_trips(inst in instance(7, 14, 3)) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(serialize_instance(&back), text);
        prop_assert_eq!(back.graph, inst.graph);
        prop_assert_eq!(back.x, inst.x);
        prop_assert_eq!(back.y, inst.y);
    }

    #[test]
    fn deleting_never_helps(inst in instance(6, 10, 2), i in any::<usize>()) {
        let b = OracleBounds::default();
        let drop: BTreeSet<VertexId> = [pick(&inst, i)].into();
        let h = inst.graph.delete_vertices(&drop).unwrap();
        let x = inst.x.difference(&drop).cloned().collect();
        let y = inst.y.difference(&drop).cloned().collect();
        let before = oracle::max_links(&inst.graph, &inst.x, &inst.y, &b).unwrap().value;
        let after = oracle::max_links(&h, &x, &y, &b).unwrap().value;
        prop_assert!(after <= before);
        prop_assert!(before <= after + 2);
    }

    #[test]
    fn attachment_preserves_the_optimum(inst in instance(4, 6, 2)) {
        let att = attach_terminals(&inst.graph, &inst.x, &inst.y).unwrap();
        let (st_max, _) = oracle::st(&att.graph, &att.s, &att.t, &wide()).unwrap();
        let xy_max = oracle::max_links(&inst.graph, &inst.x, &inst.y, &OracleBounds::default()).unwrap();
        prop_assert_eq!(st_max.value, xy_max.value);
        for link in enumerate_st_links(&att.graph, &att.s, &att.t) {
            let back = att.map.pull_link(&link).unwrap();
            prop_assert!(!matches!(classify_link(&inst.graph, &back, &inst.x, &inst.y), LinkVerdict::NotALink(_)));
            prop_assert_eq!(back.weight(), link.weight());
        }
    }

    #[test]
    fn normalizing_terminals_changes_nothing(inst in instance(6, 10, 1), i in any::<usize>(), j in any::<usize>()) {
        let s = pick(&inst, i);
        let t = pick(&inst, j);
        prop_assume!(s != t);
        let n = normalize_terminals(&inst.graph, &s, &t).unwrap();
        let b = OracleBounds::default();
        let (m1, sep1) = oracle::st(&inst.graph, &s, &t, &b).unwrap();
        let (m2, sep2) = oracle::st(&n, &s, &t, &b).unwrap();
        prop_assert_eq!(m1.value, m2.value);
        prop_assert_eq!(sep1.size, sep2.size);
    }

    #[test]
    fn lift_then_pull_is_identity(inst in instance(4, 6, 2)) {
        let att = attach_terminals(&inst.graph, &inst.x, &inst.y).unwrap();
        for link in enumerate_xy_links(&inst.graph, &inst.x, &inst.y) {
            let up = att.map.lift_link(&inst.graph, &att.graph, &link).unwrap();
            prop_assert_eq!(att.map.pull_link(&up).unwrap(), link);
        }
        let Ok(sp) = split_and_close(&att.graph, &att.s, &att.t) else {
            return Ok(());
        };
        for link in enumerate_st_links(&att.graph, &att.s, &att.t) {
            let up = sp.map.lift_link(&att.graph, &sp.graph, &link).unwrap();
            prop_assert!(!up.edge_set().contains(&sp.f));
            prop_assert_eq!(sp.map.pull_link(&up).unwrap(), link);
        }
    }
}
