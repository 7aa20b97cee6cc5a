#![no_main]

use libfuzzer_sys::fuzz_target;

use riglab::cli::parse_samples_csv;
use riglab::montecarlo::{empirical_cdf, ks_distance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(values) = parse_samples_csv(text) {
        assert!(!values.is_empty());
        assert!(values.iter().all(|v| v.is_finite()));
        // accepted samples must feed the CDF machinery without panicking
        let ecdf = empirical_cdf(&values);
        for &v in values.iter().take(64) {
            let f = ecdf.eval(v);
            assert!((0.0..=1.0).contains(&f));
        }
        let d = ks_distance(&ecdf, |_| 0.5, 16);
        assert!((0.0..=1.0).contains(&d));
    }
});
