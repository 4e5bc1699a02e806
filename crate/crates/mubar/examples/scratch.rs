use mubar::links;
use mubar::milnor::MilnorEngine;
use mubar::whitehead::{whitehead_double, whitehead_odd_double, doubled_strands_sublink, DoubleSpec};

fn main() {
    let h = links::hopf_positive();
    println!("W^2_n(hopf): defect | mu(1122) mu(1212) | expected -n, 2n");
    for n in [-3i64, -2, -1, 0, 1, 2, 3] {
        let w = whitehead_double(&h, &DoubleSpec::full(2, n)).unwrap();
        let e = MilnorEngine::new(&w, 4);
        let v1122 = e.mu_bar(&"1122".parse().unwrap()).unwrap();
        let v1212 = e.mu_bar(&"1212".parse().unwrap()).unwrap();
        println!("n={n:>2}: defect {} | {} {}", w.planar_defect(), v1122.mu, v1212.mu);
    }
    let t = links::trefoil();
    for n in [-1i64, 1] {
        let w = whitehead_double(&t, &DoubleSpec::full(1, n)).unwrap();
        println!("trefoil double n={n}: defect {}", w.planar_defect());
    }
    for (half, sgn) in [(1u64, 1i8), (3, 1), (3, -1), (5, 1)] {
        let wo = whitehead_odd_double(&h, &DoubleSpec::odd(2, half, sgn)).unwrap();
        println!("odd(2,{half},{sgn:+}): defect {} lk {}", wo.planar_defect(), wo.linking_number(1,2).unwrap());
    }
    for k in [&[1i8][..], &[-1, -1], &[1, 1, 1]] {
        let d = links::unknot_kinked(k);
        let sub = doubled_strands_sublink(&d, &DoubleSpec::full(1, 0)).unwrap();
        let subo = doubled_strands_sublink(&d, &DoubleSpec::odd(1, 1, 1)).unwrap();
        println!("framing kinks {k:?}: full defect {} lk {} | odd defect {} lk {}",
            sub.planar_defect(), sub.linking_number(1, 2).unwrap(),
            subo.planar_defect(), subo.linking_number(1, 2).unwrap());
    }
}
