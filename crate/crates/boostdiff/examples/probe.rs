use boostdiff::bandlimited::BandLimitedProfile;
use boostdiff::kernel::{kernel_boosted, kernel_rest, SpacetimePoint};
use boostdiff::special::sinc;
use boostdiff::BoostParams;

fn main() {
    let p = BoostParams::new(0.5).unwrap();
    let prof = BandLimitedProfile::from_samples(&[(0, 1.0)], &p).unwrap();
    for x in [-1.3f64, -0.2, 0.0, 0.4, 2.0] {
        let got = prof.eval(0.0, x, &p).unwrap();
        let kb = kernel_boosted(SpacetimePoint::boosted(0.0, x), &p).unwrap();
        let rest = SpacetimePoint::boosted(0.0, x).to_rest(&p);
        let kr = kernel_rest(rest, &p).unwrap();
        println!("x̃={x:5}: eval={got:.15} kb={kb:.15} sinc={:.15} | rest pt t={:.6} x={:.6} kr={kr:.15}", sinc(p.lambda*x), rest.t, rest.x);
    }
}
