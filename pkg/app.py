import sys

from dotenv import load_dotenv

from cli.main import main

if __name__ == "__main__":
    load_dotenv()
    sys.exit(main())
