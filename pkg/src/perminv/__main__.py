import sys

from perminv.cli import main

sys.exit(main())
