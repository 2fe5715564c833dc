import sys

from reeskit.cli import main

sys.exit(main())
