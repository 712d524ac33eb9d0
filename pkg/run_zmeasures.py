#!/usr/bin/env python3
"""
zmeasures launcher script
"""

import sys
from pathlib import Path

# Add the repository root to Python path
repo_dir = Path(__file__).parent
sys.path.insert(0, str(repo_dir))

try:
    from zmeasures.cli import main
    main()
except ImportError as e:
    missing = getattr(e, "name", None) or str(e)
    if any(name in str(missing) for name in ("typer", "rich", "numpy", "scipy")):
        print(f"Error: {missing} library not found.")
        print("Please install it with: pip install rich typer numpy scipy")
        print("\nOr run ./install_deps.sh")
        sys.exit(1)
    else:
        raise
