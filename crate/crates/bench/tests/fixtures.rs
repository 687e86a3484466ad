use perigid_bench::{body_bar_graph, periodic_graph, random_matrix};

#[test]
fn fixtures_are_valid_and_seeded() {
    let g = periodic_graph(8, 2, 8, 1);
    assert_eq!(g.edge_count(), 16);
    assert!(g.validate().is_ok());
    assert_eq!(g, periodic_graph(8, 2, 8, 1));

    let h = body_bar_graph(3, 10, 2, 3);
    assert_eq!(h.edge_count(), 10);
    assert!(h.validate().is_ok());

    let m = random_matrix(6, 9, 50, 0);
    assert_eq!((m.rows(), m.cols()), (6, 9));
    assert_eq!(m, random_matrix(6, 9, 50, 0));
}
