package inv;

public abstract class Discount {
    protected double rate;

    protected Discount(double rate) {
        this.rate = rate;
    }

    public abstract boolean applies(Item item);

    public double apply(Item item) {
        if (applies(item)) {
            return item.total() * (1 - rate);
        }
        return item.total();
    }

    protected double cap(double amount) {
        return Math.min(amount, 50);
    }
}
