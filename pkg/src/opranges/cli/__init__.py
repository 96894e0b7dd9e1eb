# This file can be left empty or used for CLI package-level imports.
