//! Command-line entry point for the isodet toolkit.

fn main() {
    // NOTE: subcommand dispatch lands together with the CLI module; keep the
    // binary target alive so the workspace builds during bring-up.
    eprintln!("isodet: CLI not yet wired up");
    std::process::exit(1);
}
