import sys

from hecsim.cli import main

sys.exit(main())
