// cli implementation added with the command layer
