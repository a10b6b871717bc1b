package inv;

public enum Category {
    FOOD, TOOLS, TOYS, OTHER;

    public int shelf() {
        switch (this) {
            case FOOD:
                return 1;
            case TOOLS:
                return 2;
            case TOYS:
                return 3;
            default:
                return 0;
        }
    }

    public static Category of(String code) {
        for (Category c : values()) {
            if (c.name().startsWith(code)) {
                return c;
            }
        }
        return OTHER;
    }
}
