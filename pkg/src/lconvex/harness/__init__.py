"""Instance generation, the theorem-regression suite, counterexample search and the CLI."""
