use proptest::prelude::*;

use niho_corr::arith::gcd;
use niho_corr::correlation::spectrum;
use niho_corr::field::Field;
use niho_corr::niho::niho_spectrum;
use niho_corr::sequences::{classify_decimation, m_sequence};

fn fields() -> Vec<Field> {
    vec![
        Field::with_default_poly(3, 2).unwrap(),
        Field::with_default_poly(3, 4).unwrap(),
        Field::with_default_poly(5, 2).unwrap(),
        Field::with_default_poly(7, 2).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(ix in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[ix];
        let e = |v: u64| f.from_code(v % f.size()).unwrap();
        let (a, b, c) = (e(a), e(b), e(c));
        let ab = f.mul(a, b).unwrap();
        prop_assert_eq!(ab, f.mul(b, a).unwrap());
        prop_assert_eq!(f.mul(ab, c).unwrap(), f.mul(a, f.mul(b, c).unwrap()).unwrap());
        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
        let rhs = f.add(ab, f.mul(a, c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.add(a, f.neg(a)), Ok(f.zero()));
        prop_assert_eq!(ab, f.without_tables().mul(a, b).unwrap());
    }

    #[test]
    fn decimations_compose(ix in 0usize..4, d1 in 1u64..10_000, d2 in 1u64..10_000) {
        let f = &fields()[ix];
        let len = f.order();
        let (d1, d2) = (d1 % len, d2 % len);
        prop_assume!(d1 != 0 && d2 != 0 && d1 * d2 % len != 0);
        let s = m_sequence(f);
        let a = s.decimate(d1).unwrap().decimate(d2).unwrap();
        prop_assert_eq!(&a.values, &s.decimate(d1 * d2 % len).unwrap().values);
        if gcd(d1, len) == 1 {
            prop_assert!(s.decimate(d1).unwrap().is_balanced());
        }
    }

    /// Every Niho-type decimation, not just the two theorem families, agrees
    /// shift by shift between the counting path and the direct path.
    #[test]
    fn niho_path_matches_direct_path(ix in 0usize..4, s in 0u64..50) {
        let f = &fields()[ix];
        let m = f.half_degree().unwrap();
        let pm = f.p().pow(m);
        let s = s % (pm + 1);
        let d = s * (pm - 1) + 1;
        let dec = classify_decimation(f.p(), m, d).unwrap();
        let direct = spectrum(f, dec).unwrap();
        let niho = niho_spectrum(f, dec).unwrap();
        prop_assert_eq!(&direct.per_shift, &niho.per_shift);
        prop_assert!(direct.non_integer_shifts.is_empty());
        prop_assert_eq!(direct.total_count(), f.order());
        if dec.g == 1 {
            prop_assert_eq!(direct.first_moment().unwrap(), 1);
        }
    }
}

#[test]
fn unit_circle_sizes() {
    for f in fields() {
        let pm = f.p().pow(f.half_degree().unwrap());
        let uc = f.unit_circle().unwrap();
        let distinct: std::collections::HashSet<_> = uc.iter().collect();
        assert_eq!((uc.len() as u64, distinct.len() as u64), (pm + 1, pm + 1));
        for x in uc {
            assert_eq!(f.pow(x, pm + 1).unwrap(), f.one());
        }
    }
}
