fn main() {
    let dir = std::path::Path::new("scenarios");
    std::fs::create_dir_all(dir).unwrap();
    let items = [
        ("flat.json", hs_core::scenario::flat(1)),
        ("cosine.json", hs_core::scenario::cosine(0.2, 1, 0.0)),
        ("wedge60.json", hs_core::scenario::wedge(1, 60.0)),
        ("wedge135.json", hs_core::scenario::wedge(1, 135.0)),
        ("bubble.json", hs_core::scenario::bubble(1)),
    ];
    for (name, s) in items {
        let text = serde_json::to_string_pretty(&s).unwrap();
        std::fs::write(dir.join(name), text + "\n").unwrap();
        println!("wrote {name}");
    }
}
