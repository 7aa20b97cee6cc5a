#![no_main]

use libfuzzer_sys::fuzz_target;

use riglab::cli::parse_config_str;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(map) = parse_config_str(text) {
        // accepted configs hold only known keys with non-empty values
        for (key, value) in &map {
            assert!(!key.is_empty() && !value.is_empty());
            assert!(!value.starts_with(char::is_whitespace));
        }
        // re-rendering the map parses back to itself
        let rendered: String = map
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        assert_eq!(parse_config_str(&rendered).expect("own output re-parses"), map);
    }
});
