//! Writes a state file, reads it back, and shows the errors for bad input.

use qactivate::statecore::io::{read_state, state_from_json, write_state};
use qactivate::statecore::random_state;

fn main() -> qactivate::Result<()> {
    let dir = std::env::temp_dir().join("qactivate-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("random_2x3.json");

    let rho = random_state(&[2, 3], 2024);
    write_state(&path, &rho)?;
    let back = read_state(&path)?;
    println!("wrote {} and read it back: identical = {}", path.display(), back == rho);

    for text in [
        r#"{"dims":[2],"matrix":[[1,0],[0,0],[0,0]]}"#,
        r#"{"dims":[2],"matrix":[[0.5,0],[0,0],[0,0],[0.2,0]]}"#,
        r#"{"dims":[2],"matrix":[[1.2,0],[0,0],[0,0],[-0.2,0]]}"#,
        r#"{"dims":[2],"rho":[]}"#,
    ] {
        match state_from_json(text) {
            Ok(_) => println!("accepted {text}"),
            Err(e) => println!("rejected: {e}"),
        }
    }
    Ok(())
}
