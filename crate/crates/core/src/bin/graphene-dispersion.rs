fn main() -> std::process::ExitCode {
    graphene_dispersion::cli::main()
}
