import sys

from mfk.cli import main

sys.exit(main())
