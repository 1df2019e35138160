import sys

from digitcover.cli import main

sys.exit(main())
