//! The generating Mealy automaton, its Moore diagram, and a JSON round trip.

use imglab::automaton::{img_automaton, moore_dot, recursion_mismatch, MealyAutomaton};
use imglab::group::vertex;

fn main() -> imglab::Result<()> {
    let m = img_automaton();
    print!("{}", moore_dot(&m));

    let json = m.to_json();
    println!("\n{json}");
    assert_eq!(MealyAutomaton::from_json(&json)?, m);

    for state in ["a", "b", "c"] {
        let v = vertex("0000000");
        println!("{state}({v}) = {}", m.state(state)?.act(&v)?);
    }
    println!("agrees with the wreath recursion to level 10: {}", recursion_mismatch(&m, 10)?.is_none());
    Ok(())
}
