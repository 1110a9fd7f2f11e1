"""Main entry point for the levylab package."""

from .cli import main

if __name__ == '__main__':
    main()
