use proptest::prelude::*;

use kempe3k1::graph::Graph;
use kempe3k1::harness::{
    read_graph6, report, verify_corpus, verify_graph, verify_graphs, CorpusSource, CorpusSummary,
};
use kempe3k1::kempe::SearchBudget;

#[test]
fn histograms_sum_to_corpus_size() {
    let run = verify_corpus(&CorpusSource::Enumerate { n: 8 }, 0, SearchBudget::default()).unwrap();
    let rep = report(&run.records);
    for hist in [&rep.delta_histogram, &rep.omega_histogram, &rep.chi_histogram] {
        assert_eq!(hist.values().sum::<usize>(), 410);
    }
    assert!(!run.summary.has_violations());
}

#[test]
fn min_delta_filters_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    // K3, C5, K1
    std::fs::write(&path, "Bw\nDhc\n@\n").unwrap();
    let all = verify_corpus(&CorpusSource::File(path.clone()), 0, SearchBudget::default()).unwrap();
    assert_eq!(all.records.len(), 3);
    let some = verify_corpus(&CorpusSource::File(path), 2, SearchBudget::default()).unwrap();
    assert_eq!(some.records.len(), 2);
}

#[test]
fn injected_violation_is_listed() {
    let g = Graph::complete(9).unwrap();
    let mut r = verify_graph(&g, SearchBudget::default());
    r.chi = 10;
    r.mr2_pass = false;
    let rep = report(&[r.clone()]);
    assert_eq!(rep.summary.violations, vec![("mr2".to_string(), r.id.clone())]);
    assert!(rep.to_text().contains(&r.id));
}

#[test]
fn records_keep_input_order() {
    let graphs = read_graph6("Bw\nDhc\n@\nA_\n".as_bytes()).unwrap();
    let run = verify_graphs(&graphs, SearchBudget::default());
    let ns: Vec<usize> = run.records.iter().map(|r| r.n).collect();
    assert_eq!(ns, vec![3, 5, 1, 2]);
}

/// Complement of a random triangle-free graph: add edges in random order,
/// keeping each one only if it closes no triangle.
fn random_3k1_free(n: usize, seed: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut bits = seed.iter().cycle();
    for i in 0..n {
        for j in i + 1..n {
            if *bits.next().unwrap()
                && g.adjacency(i).intersection(g.adjacency(j)).is_empty()
            {
                g = Graph::build(n, g.edges().chain([(i, j)])).unwrap();
            }
        }
    }
    g.complement()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn record_invariants(n in 1usize..=12, seed in prop::collection::vec(any::<bool>(), 1..40)) {
        let g = random_3k1_free(n, &seed);
        let r = verify_graph(&g, SearchBudget::default());
        prop_assert!(r.three_k1_free);
        prop_assert!(r.chi >= r.omega && r.chi <= r.delta + 1);
        prop_assert!(r.mr2_pass && r.mr1_pass && r.bk_pass && r.statement_i_pass);
        prop_assert!(!r.engine.failed);
        prop_assert!(r.engine_colors <= r.chi.max(r.bound_mr2).max(r.delta + 1));
        if r.mr2_applicable {
            prop_assert!(r.engine_colors <= r.bound_mr2);
        }
    }

    #[test]
    fn summary_merge_is_order_independent(split in 0usize..=38) {
        let graphs: Vec<Graph> = kempe3k1::canon::corpus_3k1_free(6, 0)
            .unwrap()
            .into_iter()
            .map(|c| c.graph)
            .collect();
        let records = verify_graphs(&graphs, SearchBudget::default()).records;
        let (a, b) = records.split_at(split);
        let (sa, sb) = (CorpusSummary::from_records(a), CorpusSummary::from_records(b));
        let mut ab = sa.clone();
        ab.merge(&sb);
        let mut ba = sb;
        ba.merge(&sa);
        prop_assert_eq!(ab.graphs, ba.graphs);
        prop_assert_eq!(ab.mr2_applicable, ba.mr2_applicable);
        prop_assert_eq!(&ab.engine, &ba.engine);
        prop_assert_eq!(ab, CorpusSummary::from_records(&records));
    }
}
