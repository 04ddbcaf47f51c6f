//! Drive the batch front end in-process, as the `schiffer-lab` binary does.

fn main() {
    let runs: [&[&str]; 3] = [
        &[
            "schiffer-lab",
            "eigen-scan",
            "--l",
            "0",
            "--r-hat",
            "2",
            "--k-max",
            "6",
        ],
        &["schiffer-lab", "density", "--r-hat", "2", "--k-max", "100"],
        &["schiffer-lab", "ball-check", "--format", "json"],
    ];
    for args in runs {
        println!("$ {}", args.join(" "));
        let code = schiffer_lab::cli::run(
            args.iter().copied(),
            &mut std::io::stdout(),
            &mut std::io::stderr(),
        );
        println!("(exit {code})\n");
    }
}
