import sys
from xyopt.main import main

if __name__ == "__main__":
    sys.exit(main())
