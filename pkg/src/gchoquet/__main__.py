import sys

from gchoquet.cli import main

sys.exit(main())
