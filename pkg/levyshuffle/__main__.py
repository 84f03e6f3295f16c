from .core.manager import main

main()
