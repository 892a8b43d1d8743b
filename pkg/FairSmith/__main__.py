import sys

from FairSmith.cli import main

sys.exit(main())
