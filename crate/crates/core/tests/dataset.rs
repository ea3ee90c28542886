use branchloci_core::acceptance::QUOTED;
use branchloci_core::dataset::{check_compatibility, compose_compatible, parse_data_set};
use branchloci_core::oracle::{enumerate_data_sets, glued_genus};

#[test]
fn quoted_data_sets() {
    for (text, genus, kind, irreducible) in QUOTED {
        let d = parse_data_set(text).unwrap();
        assert!(d.validate().valid, "{text}");
        assert_eq!(d.genus().unwrap(), genus, "{text}");
        let class = d.classify();
        assert_eq!(
            (class.kind, class.irreducible),
            (kind, irreducible),
            "{text}"
        );
        assert_eq!(parse_data_set(&d.to_string()).unwrap(), d);
    }
}

#[test]
fn order_four_pair_glues_to_the_type_two_action() {
    let f = parse_data_set("(4,0;(1,2),(1,4),(1,4))").unwrap();
    let g = parse_data_set("(4,0;(1,2),(3,4),(3,4))").unwrap();
    assert!(check_compatibility(&f, 3, &g, 3).unwrap());
    let glued = compose_compatible(&f, 3, &g, 3).unwrap();
    assert_eq!(glued.to_string(), "(4,0;(1,2),(1,4),(1,2),(3,4))");
    assert_eq!(glued.genus().unwrap(), glued_genus(1, 1, 4, 4));
    assert!(glued.validate().valid);
}

#[test]
fn enumeration_is_closed_under_the_genus_formula() {
    let all = enumerate_data_sets(8, 3);
    assert!(all
        .iter()
        .all(|d| d.validate().valid && (1..=3).contains(&d.genus().unwrap())));
    let mut pairs = 0;
    for d1 in &all {
        for d2 in all.iter().filter(|d| d.n == d1.n) {
            for r in 1..=d1.len() {
                for s in 1..=d2.len() {
                    if check_compatibility(d1, r, d2, s).unwrap() {
                        pairs += 1;
                        let k = d1.pairs[r - 1].n_i;
                        let g = compose_compatible(d1, r, d2, s).unwrap().genus().unwrap();
                        assert_eq!(
                            g,
                            glued_genus(d1.genus().unwrap(), d2.genus().unwrap(), d1.n, k)
                        );
                    }
                }
            }
        }
    }
    assert!(pairs > 100);
}
