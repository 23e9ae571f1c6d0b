import sys

from memauto.cli import main

sys.exit(main())
