from graphoplex.main import main

main()
