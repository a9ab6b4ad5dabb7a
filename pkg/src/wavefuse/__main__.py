import sys

from wavefuse.cli import main

sys.exit(main())
