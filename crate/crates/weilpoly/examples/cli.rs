//! Drive the command-line interface in-process.

use weilpoly::cli::run;

fn main() {
    let invocations: [&[&str]; 3] = [
        &["weilpoly", "check-weil", "--q", "2", "2,0,1"],
        &["weilpoly", "polygon", "--p", "2", "q=2^1; a=1,0,0,0,0,0,1"],
        &["weilpoly", "check-weil", "--q", "6", "2,0,1"],
    ];
    for args in invocations {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        println!("$ {}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        print!("{}", String::from_utf8_lossy(&err));
        println!("exit {code}");
    }
}
