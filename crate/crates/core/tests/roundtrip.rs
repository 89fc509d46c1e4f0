use proptest::prelude::*;
use tabsieve::partition::partitions_of;
use tabsieve::{enumerate_sst, Partition, Tableau};

fn small_shape() -> impl Strategy<Value = Partition> {
    (1usize..=6).prop_flat_map(|size| {
        let shapes = partitions_of(size);
        (0..shapes.len()).prop_map(move |i| shapes[i].clone())
    })
}

fn small_tableau() -> impl Strategy<Value = Tableau> {
    small_shape()
        .prop_flat_map(|shape| {
            let lo = shape.length();
            (Just(shape), lo..=lo + 2)
        })
        .prop_flat_map(|(shape, n)| {
            let all = enumerate_sst(&shape, n).unwrap();
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

fn reading_word(t: &Tableau) -> Vec<u32> {
    t.rows().iter().rev().flat_map(|r| r.iter().map(|&e| e as u32)).collect()
}

proptest! {
    #[test]
    fn text_forms_round_trip(t in small_tableau()) {
        let n = t.alphabet_bound();
        prop_assert_eq!(&Tableau::parse(&t.to_string(), n).unwrap(), &t);
        prop_assert_eq!(&Tableau::parse_compact(&t.compact(), n).unwrap(), &t);
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Tableau>(&json).unwrap(), &t);
    }

    #[test]
    fn order_is_lexicographic_on_reading_words(a in small_tableau(), b in small_tableau()) {
        if a.shape() == b.shape() && a.alphabet_bound() == b.alphabet_bound() {
            prop_assert_eq!(a.cmp(&b), reading_word(&a).cmp(&reading_word(&b)));
        }
    }

    #[test]
    fn partitions_round_trip(shape in small_shape()) {
        prop_assert_eq!(&shape.to_string().parse::<Partition>().unwrap(), &shape);
        prop_assert_eq!(&shape.conjugate().conjugate(), &shape);
    }
}

#[test]
fn malformed_tableaux_are_rejected() {
    for (text, n) in [("2 1", 3), ("1 2 / 1", 3), ("1 / 2 2", 3), ("1 4", 3), ("0 1", 3), ("1 x", 3)] {
        assert!(Tableau::parse_compact(text, n).is_err(), "{text}");
    }
}
