# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

from .cli import main

if __name__ == "__main__":
    main()
